#pragma once

#include <map>
#include <string>
#include <vector>

#include "wucalc/blowup.hpp"
#include "wucalc/manifold.hpp"

// Stock models: complex projective spaces, the one-point manifold, and the
// two families of centers (a point, a linear subspace of projective space)
// together with their restriction and Gysin data.

namespace wucalc {

/// CP^n with one degree-2 generator, rule g^{n+1} -> 0, w = (1+g)^{n+1} and
/// rational companion carrying p = (1+g^2)^{n+1}.
inline ManifoldModel cp(int n, const std::string& gen = "x") {
    if (n < 1) fail(ErrorKind::ValidationError, "cp needs n >= 1");
    PresentationBuilder<GF2> b(2 * n);
    b.add_generator(gen, 2);
    b.add_rule(gen, n + 1, std::vector<Term<GF2>>{});
    PresPtr<GF2> ring = b.build();
    Element<GF2> x = gen_elem(ring, gen);
    Element<GF2> sw = pow_elem(add(unit(ring), x), n + 1);

    PresentationBuilder<Rational> qb(2 * n);
    qb.add_generator(gen, 2);
    qb.add_rule(gen, n + 1, std::vector<Term<Rational>>{});
    PresPtr<Rational> qring = qb.build();
    Element<Rational> xq = gen_elem(qring, gen);
    Element<Rational> p = pow_elem(add(unit(qring), mul(xq, xq)), n + 1);

    Monomial top{n};
    RationalCompanion comp{qring, std::move(p), top};
    SqAction sq(ring);
    return make_manifold(ring, 2 * n, top, std::move(sw), std::move(sq), std::move(comp),
                         "cp" + std::to_string(n));
}

inline ManifoldModel point_manifold() {
    PresPtr<GF2> ring = PresentationBuilder<GF2>(0).build();
    PresPtr<Rational> qring = PresentationBuilder<Rational>(0).build();
    Monomial top{};
    RationalCompanion comp{qring, unit(qring), top};
    return make_manifold(ring, 0, top, unit(ring), SqAction(ring), std::move(comp), "point");
}

/// A point center inside any even-dimensional ambient manifold: trivial
/// normal bundle of rank dim/2, Gysin image of 1 is the top monomial.
inline SubmanifoldData point_center(const ManifoldModel& ambient) {
    if (ambient.dim % 2 != 0)
        fail(ErrorKind::ValidationError, "point centers need an even-dimensional ambient");
    int r = ambient.dim / 2;
    ManifoldModel pt = point_manifold();

    std::vector<Element<GF2>> pb_images(ambient.ring->n_gens(), zero_elem(pt.ring));
    RingHom<GF2> pullback = make_ring_hom(ambient.ring, pt.ring, std::move(pb_images));
    std::map<Monomial, Element<GF2>> gy;
    gy[Monomial{}] = monomial_elem(ambient.ring, ambient.top);
    LinearMap<GF2> gysin = make_linear_map(pt.ring, ambient.ring, 2 * r, std::move(gy));

    std::optional<RationalSubmanifoldData> rat;
    if (ambient.rational) {
        std::vector<Element<Rational>> qimages(ambient.rational->ring->n_gens(),
                                               zero_elem(pt.rational->ring));
        RingHom<Rational> qpull =
            make_ring_hom(ambient.rational->ring, pt.rational->ring, std::move(qimages));
        std::map<Monomial, Element<Rational>> qgy;
        qgy[Monomial{}] = monomial_elem(ambient.rational->ring, ambient.rational->top);
        LinearMap<Rational> qgysin =
            make_linear_map(pt.rational->ring, ambient.rational->ring, 2 * r, std::move(qgy));
        rat = RationalSubmanifoldData{std::move(qpull), unit(pt.rational->ring),
                                      std::move(qgysin)};
    }
    Element<GF2> chern = unit(pt.ring);
    return make_submanifold_data(ambient, std::move(pt), r, std::move(pullback),
                                 std::move(chern), std::move(gysin), std::move(rat));
}

/// A linear CP^k inside CP^n: the hyperplane class restricts to the
/// hyperplane class, the normal bundle is (n-k) O(1) with c = (1+a)^{n-k},
/// and the Gysin map sends a^j to x^{n-k+j}.
inline SubmanifoldData linear_cp_center(int k, const ManifoldModel& ambient) {
    int n = ambient.dim / 2;
    if (ambient.dim % 2 != 0 || ambient.ring->n_gens() != 1 ||
        ambient.ring->gens()[0].degree != 2 || ambient.top != Monomial{n})
        fail(ErrorKind::ValidationError,
             "linear centers need a projective-space ambient with one degree-2 generator");
    if (k < 1 || n - k < 2)
        fail(ErrorKind::ValidationError,
             "linear centers need 1 <= k <= n-2 for codimension at least 4");
    int r = n - k;
    ManifoldModel center = cp(k, "a");

    Element<GF2> a = gen_elem(center.ring, "a");
    RingHom<GF2> pullback = make_ring_hom(ambient.ring, center.ring, {a});
    Element<GF2> chern = pow_elem(add(unit(center.ring), a), r);
    std::map<Monomial, Element<GF2>> gy;
    for (int j = 0; j <= k; ++j)
        gy[Monomial{j}] = monomial_elem(ambient.ring, Monomial{r + j});
    LinearMap<GF2> gysin = make_linear_map(center.ring, ambient.ring, 2 * r, std::move(gy));

    std::optional<RationalSubmanifoldData> rat;
    if (ambient.rational) {
        const auto& qa_ring = center.rational->ring;
        Element<Rational> qa = gen_elem(qa_ring, "a");
        RingHom<Rational> qpull = make_ring_hom(ambient.rational->ring, qa_ring, {qa});
        Element<Rational> qchern = pow_elem(add(unit(qa_ring), qa), r);
        std::map<Monomial, Element<Rational>> qgy;
        for (int j = 0; j <= k; ++j)
            qgy[Monomial{j}] = monomial_elem(ambient.rational->ring, Monomial{r + j});
        LinearMap<Rational> qgysin =
            make_linear_map(qa_ring, ambient.rational->ring, 2 * r, std::move(qgy));
        rat = RationalSubmanifoldData{std::move(qpull), std::move(qchern), std::move(qgysin)};
    }
    return make_submanifold_data(ambient, std::move(center), r, std::move(pullback),
                                 std::move(chern), std::move(gysin), std::move(rat));
}

/// Blow-up of M at a point, the most common construction in tests.
inline BlowUpModel point_blowup(const ManifoldModel& ambient) {
    return build_blowup_model(point_center(ambient));
}

} // namespace wucalc
