#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wucalc/charclass.hpp"
#include "wucalc/manifold.hpp"

// The blow-up of M along a codimension-2r submanifold N, modeled on
// H*(M~) = pi* H*(M) (+) alpha_jp(H*(N){1, xi, ..., xi^{r-2}}) where xi is
// the hyperplane class of the projectivized normal bundle P(eta_N). Products
// and Steenrod squares that overflow the xi-exponent bound are rewritten
// through the Euler class e' of the tautological quotient bundle.

namespace wucalc {

struct RationalSubmanifoldData {
    RingHom<Rational> pullback;     // restriction H*(M;Q) -> H*(N;Q)
    Element<Rational> normal_chern; // total Chern class of the normal bundle
    std::optional<LinearMap<Rational>> gysin;
};

struct SubmanifoldData {
    ManifoldModel ambient; // M, dimension n
    ManifoldModel center;  // N, dimension n - 2r
    int r = 0;             // complex rank of the normal bundle
    RingHom<GF2> pullback; // restriction H*(M) -> H*(N)
    Element<GF2> normal_chern;           // c(eta_N) mod 2, in H*(N)
    std::optional<LinearMap<GF2>> gysin; // alpha_i: H^k(N) -> H^{k+2r}(M)
    std::optional<RationalSubmanifoldData> rational;
};

namespace detail {

template <class F>
void check_normal_chern(const PresPtr<F>& nring, const Element<F>& c, int r) {
    check_same_ring(c.pres(), nring, "normal Chern class");
    if (!constant_term(c).is_one())
        fail(ErrorKind::InvalidChern, "normal Chern class must have constant term 1");
    for (const auto& t : c.terms()) {
        int d = nring->degree(t.mono);
        if (d % 2 != 0 || d > 2 * r)
            fail(ErrorKind::InvalidChern,
                 "normal Chern class has a component outside degrees 2..2r");
    }
}

// alpha_i(i*(a) m) = a alpha_i(m), swept over all basis pairs that fit under
// the ambient truncation. Linearity makes the sweep exhaustive.
template <class F>
void check_projection_formula(const PresPtr<F>& mring, const PresPtr<F>& nring,
                              const RingHom<F>& pullback, const LinearMap<F>& gysin, int codim) {
    int n = mring->truncation();
    for (int k = 1; k + codim <= n; ++k)
        for (const auto& am : mring->basis_of_degree(k)) {
            Element<F> a = monomial_elem(mring, am);
            Element<F> ia = apply_hom(pullback, a);
            for (int j = 0; k + j + codim <= n && j <= nring->truncation(); ++j)
                for (const auto& nm : nring->basis_of_degree(j)) {
                    Element<F> m = monomial_elem(nring, nm);
                    if (apply_hom(gysin, mul(ia, m)) != mul(a, apply_hom(gysin, m)))
                        fail(ErrorKind::ValidationError,
                             "Gysin map violates the projection formula");
                }
        }
}

} // namespace detail

inline SubmanifoldData make_submanifold_data(ManifoldModel ambient, ManifoldModel center, int r,
                                             RingHom<GF2> pullback, Element<GF2> normal_chern,
                                             std::optional<LinearMap<GF2>> gysin = {},
                                             std::optional<RationalSubmanifoldData> rational = {}) {
    if (r < 2) fail(ErrorKind::ValidationError, "blow-up centers need codimension 2r with r >= 2");
    if (center.dim != ambient.dim - 2 * r)
        fail(ErrorKind::ValidationError, "center dimension does not match the codimension");
    detail::check_same_ring(pullback.source, ambient.ring, "restriction map source");
    detail::check_same_ring(pullback.target, center.ring, "restriction map target");
    detail::check_normal_chern(center.ring, normal_chern, r);
    if (gysin) {
        detail::check_same_ring(gysin->source, center.ring, "Gysin map source");
        detail::check_same_ring(gysin->target, ambient.ring, "Gysin map target");
        if (gysin->shift != 2 * r)
            fail(ErrorKind::ValidationError, "Gysin map must raise degree by the codimension");
        detail::check_projection_formula(ambient.ring, center.ring, pullback, *gysin, 2 * r);
    }
    if (rational) {
        if (!ambient.rational || !center.rational)
            fail(ErrorKind::ValidationError,
                 "rational submanifold data needs rational companions on both manifolds");
        detail::check_same_ring(rational->pullback.source, ambient.rational->ring,
                                "rational restriction source");
        detail::check_same_ring(rational->pullback.target, center.rational->ring,
                                "rational restriction target");
        detail::check_normal_chern(center.rational->ring, rational->normal_chern, r);
        if (chern_mod2_to_sw(rational->normal_chern, center.ring) != normal_chern)
            fail(ErrorKind::ValidationError,
                 "normal Chern class does not reduce to its mod-2 counterpart");
        if (rational->gysin) {
            detail::check_same_ring(rational->gysin->source, center.rational->ring,
                                    "rational Gysin source");
            detail::check_same_ring(rational->gysin->target, ambient.rational->ring,
                                    "rational Gysin target");
            if (rational->gysin->shift != 2 * r)
                fail(ErrorKind::ValidationError,
                     "rational Gysin map must raise degree by the codimension");
            detail::check_projection_formula(ambient.rational->ring, center.rational->ring,
                                             rational->pullback, *rational->gysin, 2 * r);
        }
    }
    return SubmanifoldData{std::move(ambient),      std::move(center), r,
                           std::move(pullback),     std::move(normal_chern),
                           std::move(gysin),        std::move(rational)};
}

// ---------------------------------------------------------------------------
// Projectivized normal bundle P(eta_N): the ring of N extended by xi (degree
// 2) with the Chern relation xi^r = sum_{i>=1} c_i(eta_N) xi^{r-i} (mod 2).

struct ProjBundleModel {
    ManifoldModel model;  // P(eta_N) as a closed manifold of dimension n-2
    RingHom<GF2> p_star;  // H*(N) -> H*(P)
    size_t xi = 0;        // generator index of xi
    int r = 0;
};

namespace detail {

// sum_{i=0}^r c_i (1+xi)^{e-i}, with the c_i pulled back to the bundle ring.
template <class F>
Element<F> collar_series(const RingHom<F>& p_star, const Element<F>& chern,
                         const Monomial& xi_mono, int r, int e) {
    const PresPtr<F>& pring = p_star.target;
    Element<F> one_plus_xi = add(unit(pring), monomial_elem(pring, xi_mono));
    Element<F> cp = apply_hom(p_star, chern);
    Element<F> out = zero_elem(pring);
    for (int i = 0; i <= r; ++i)
        out = add(out, mul(component(cp, 2 * i), pow_elem(one_plus_xi, e - i)));
    return out;
}

inline Monomial extend_mono(const Monomial& m, int xi_exp) {
    Monomial out = m;
    out.push_back(xi_exp);
    return out;
}

// Presentation of H*(N)[xi] / (N's rules, xi^r -> sign * sum c_i xi^{r-i}),
// truncated at n-2. Returns the ring and the pullback from N.
template <class F>
std::pair<PresPtr<F>, RingHom<F>> projectivized_ring(const PresPtr<F>& nring,
                                                     const Element<F>& chern, int r, int trunc,
                                                     bool negate_rule) {
    if (nring->find("xi") >= 0)
        fail(ErrorKind::ValidationError, "the generator name 'xi' is reserved");
    PresentationBuilder<F> pb(trunc);
    for (const auto& g : nring->gens()) pb.add_generator(g.name, g.degree);
    pb.add_generator("xi", 2);
    for (size_t g = 0; g < nring->n_gens(); ++g) {
        const auto& rule = nring->rule(g);
        if (!rule) continue;
        std::vector<Term<F>> repl;
        for (const auto& t : rule->replacement) repl.push_back({extend_mono(t.mono, 0), t.coef});
        pb.add_rule(nring->gens()[g].name, rule->exponent, std::move(repl));
    }
    std::vector<Term<F>> xi_repl;
    for (const auto& t : chern.terms()) {
        int i = nring->degree(t.mono) / 2;
        if (i == 0) continue;
        xi_repl.push_back({extend_mono(t.mono, r - i), negate_rule ? -t.coef : t.coef});
    }
    pb.add_rule("xi", r, std::move(xi_repl));
    PresPtr<F> pring = pb.build();

    std::vector<Element<F>> images;
    for (const auto& g : nring->gens()) images.push_back(gen_elem(pring, g.name));
    return {pring, make_ring_hom(nring, pring, std::move(images))};
}

// e' = xi^{r-1} + c_1 xi^{r-2} + ... + c_{r-1}: the Euler class of the
// tautological quotient bundle, used to rewrite xi-exponent overflow.
template <class F>
Element<F> quotient_euler(const RingHom<F>& p_star, const Element<F>& chern, size_t xi, int r) {
    const PresPtr<F>& pring = p_star.target;
    Element<F> cp = apply_hom(p_star, chern);
    Element<F> out = zero_elem(pring);
    for (int j = 0; j <= r - 1; ++j) {
        Monomial xm(pring->n_gens(), 0);
        xm[xi] = r - 1 - j;
        out = add(out, mul(component(cp, 2 * j), monomial_elem(pring, xm)));
    }
    return out;
}

} // namespace detail

inline ProjBundleModel build_projectivization(const SubmanifoldData& s) {
    const ManifoldModel& N = s.center;
    int n = s.ambient.dim;
    detail::check_normal_chern(N.ring, s.normal_chern, s.r);
    auto [pring, p_star] = detail::projectivized_ring(N.ring, s.normal_chern, s.r, n - 2, false);
    size_t xi = pring->n_gens() - 1;

    std::map<std::string, Element<GF2>> sq_images;
    for (size_t g = 0; g < N.ring->n_gens(); ++g)
        sq_images[N.ring->gens()[g].name] = apply_hom(p_star, N.sq.image(g));
    SqAction sq(pring, sq_images);

    Monomial xi_mono(pring->n_gens(), 0);
    xi_mono[xi] = 1;
    Element<GF2> sw =
        mul(apply_hom(p_star, N.sw), detail::collar_series(p_star, s.normal_chern, xi_mono, s.r, s.r));
    Monomial top = detail::extend_mono(N.top, s.r - 1);
    ManifoldModel model = make_manifold(pring, n - 2, std::move(top), std::move(sw), std::move(sq),
                                        {}, "proj(" + N.name + ")");

    // Leray-Hirsch: H*(P) must be free over H*(N) on 1, xi, ..., xi^{r-1}.
    // A mismatch means N's rules do not cut out its cohomology exactly.
    for (int k = 0; k <= n - 2; ++k) {
        size_t expect = 0;
        for (int i = 0; i < s.r; ++i)
            if (k - 2 * i >= 0) expect += N.ring->basis_of_degree(k - 2 * i).size();
        if (model.ring->basis_of_degree(k).size() != expect)
            fail(ErrorKind::ValidationError,
                 "projectivization has the wrong rank in degree " + std::to_string(k));
        if (!poincare_check(model, k))
            fail(ErrorKind::ValidationError,
                 "projectivization pairing is degenerate in degree " + std::to_string(k));
    }
    return ProjBundleModel{std::move(model), std::move(p_star), xi, s.r};
}

// ---------------------------------------------------------------------------
// The blow-up model proper.

struct RationalBlowUpData {
    PresPtr<Rational> pring; // rational projectivization, signed Chern relation
    RingHom<Rational> p_star;
    RingHom<Rational> restrict_p; // p* after i*: H*(M;Q) -> H*(P;Q)
    std::optional<LinearMap<Rational>> gysin;
    Element<Rational> eprime;
    size_t xi = 0;
};

struct BlowUpModel {
    SubmanifoldData data;
    ProjBundleModel proj;
    int dim = 0;
    RingHom<GF2> restrict_p; // p* after i*: H*(M) -> H*(P)
    Element<GF2> eprime;
    std::optional<RationalBlowUpData> rational;
    std::string name;
};

inline BlowUpModel build_blowup_model(SubmanifoldData s) {
    ProjBundleModel proj = build_projectivization(s);
    int n = s.ambient.dim;
    RingHom<GF2> restrict_p = compose(proj.p_star, s.pullback);
    Element<GF2> eprime = detail::quotient_euler(proj.p_star, s.normal_chern, proj.xi, proj.r);

    // Rank bookkeeping for the two-summand decomposition in every degree.
    for (int k = 0; k <= n; ++k) {
        size_t exc = 0;
        for (const auto& m : proj.model.ring->basis_of_degree(k - 2))
            if (m[proj.xi] <= proj.r - 2) ++exc;
        size_t expect = 0;
        for (int i = 0; i <= proj.r - 2; ++i)
            if (k - 2 - 2 * i >= 0) expect += s.center.ring->basis_of_degree(k - 2 - 2 * i).size();
        if (exc != expect)
            fail(ErrorKind::ValidationError,
                 "blow-up rank formula fails in degree " + std::to_string(k));
    }

    std::optional<RationalBlowUpData> rat;
    if (s.rational) {
        const auto& q = *s.rational;
        auto [qring, qp_star] = detail::projectivized_ring(
            s.center.rational->ring, q.normal_chern, s.r, n - 2, true);
        size_t xi = qring->n_gens() - 1;
        RingHom<Rational> qrestrict = compose(qp_star, q.pullback);
        Element<Rational> qeprime = detail::quotient_euler(qp_star, q.normal_chern, xi, s.r);
        rat = RationalBlowUpData{qring,    std::move(qp_star), std::move(qrestrict),
                                 q.gysin,  std::move(qeprime), xi};
    }
    std::string name = "blowup(" + s.ambient.name + ", " + s.center.name + ")";
    return BlowUpModel{std::move(s),       std::move(proj), n, std::move(restrict_p),
                       std::move(eprime),  std::move(rat),  std::move(name)};
}

// ---------------------------------------------------------------------------
// Elements of H*(M~) in the canonical split.

template <class F>
struct BlowUpElement {
    Element<F> base; // class pulled back from M
    Element<F> exc;  // exceptional part in H*(P), xi-exponent <= r-2

    bool is_zero() const { return base.is_zero() && exc.is_zero(); }
    friend bool operator==(const BlowUpElement& a, const BlowUpElement& b) {
        return a.base == b.base && a.exc == b.exc;
    }
    friend bool operator!=(const BlowUpElement& a, const BlowUpElement& b) { return !(a == b); }
};

/// The maps and rewrite data of one blow-up model over one coefficient field;
/// obtained from gf2_ctx or rational_ctx below.
template <class F>
struct BlowCtx {
    PresPtr<F> mring, nring, pring;
    const RingHom<F>* p_star;
    const RingHom<F>* restrict_p;
    const LinearMap<F>* gysin; // null when no Gysin data was supplied
    const Element<F>* eprime;
    size_t xi = 0;
    int r = 0;
    int dim = 0;
    Monomial m_top;
};

inline BlowCtx<GF2> gf2_ctx(const BlowUpModel& m) {
    return {m.data.ambient.ring,
            m.data.center.ring,
            m.proj.model.ring,
            &m.proj.p_star,
            &m.restrict_p,
            m.data.gysin ? &*m.data.gysin : nullptr,
            &m.eprime,
            m.proj.xi,
            m.data.r,
            m.dim,
            m.data.ambient.top};
}

inline BlowCtx<Rational> rational_ctx(const BlowUpModel& m) {
    if (!m.rational)
        fail(ErrorKind::ValidationError, "blow-up model carries no rational data");
    const auto& q = *m.rational;
    return {m.data.ambient.rational->ring,
            m.data.center.rational->ring,
            q.pring,
            &q.p_star,
            &q.restrict_p,
            q.gysin ? &*q.gysin : nullptr,
            &q.eprime,
            q.xi,
            m.data.r,
            m.dim,
            m.data.ambient.rational->top};
}

template <class F>
Element<F> xi_elem(const BlowCtx<F>& c) {
    Monomial m(c.pring->n_gens(), 0);
    m[c.xi] = 1;
    return monomial_elem(c.pring, m);
}

template <class F>
BlowUpElement<F> blowup_zero(const BlowCtx<F>& c) {
    return {zero_elem(c.mring), zero_elem(c.pring)};
}

template <class F>
BlowUpElement<F> blowup_add(const BlowUpElement<F>& a, const BlowUpElement<F>& b) {
    return {add(a.base, b.base), add(a.exc, b.exc)};
}

template <class F>
BlowUpElement<F> blowup_sub(const BlowUpElement<F>& a, const BlowUpElement<F>& b) {
    return {sub(a.base, b.base), sub(a.exc, b.exc)};
}

template <class F>
BlowUpElement<F> blowup_scale(const BlowUpElement<F>& a, const F& c) {
    return {scale(a.base, c), scale(a.exc, c)};
}

/// Degree-k piece: the base part in degree k, the exceptional part in k-2.
template <class F>
BlowUpElement<F> blowup_component(const BlowUpElement<F>& a, int k) {
    return {component(a.base, k), component(a.exc, k - 2)};
}

template <class F>
BlowUpElement<F> pi_star(const BlowCtx<F>& c, const Element<F>& a) {
    detail::check_same_ring(a.pres(), c.mring, "pi_star");
    return {a, zero_elem(c.pring)};
}

template <class F>
Element<F> alpha_pi(const BlowCtx<F>& c, const BlowUpElement<F>& x) {
    detail::check_same_ring(x.base.pres(), c.mring, "alpha_pi");
    return x.base;
}

namespace detail {

// The xi^{r-1}-coefficient of a canonical-form class on P, read back as a
// class on N (its degree is at most dim N, so it always fits).
template <class F>
Element<F> xi_top_coefficient(const BlowCtx<F>& c, const Element<F>& z) {
    std::vector<Term<F>> raw;
    for (const auto& t : z.terms())
        if (t.mono[c.xi] == c.r - 1)
            raw.push_back({Monomial(t.mono.begin(), t.mono.end() - 1), t.coef});
    return normal_form(c.nring, raw);
}

} // namespace detail

/// Splits b in H*(P) as m e' + b' with b' of xi-exponent <= r-2, and sends it
/// to (alpha_i(m), b'). The summand inclusion when no overflow occurs.
template <class F>
BlowUpElement<F> alpha_jp(const BlowCtx<F>& c, const Element<F>& b) {
    detail::check_same_ring(b.pres(), c.pring, "alpha_jp");
    Element<F> m = detail::xi_top_coefficient(c, b);
    if (m.is_zero()) return {zero_elem(c.mring), b};
    if (!c.gysin)
        fail(ErrorKind::MissingGysin,
             "rewriting past xi^{r-2} needs the Gysin map of the center");
    Element<F> rest = sub(b, mul(apply_hom(*c.p_star, m), *c.eprime));
    return {apply_hom(*c.gysin, m), rest};
}

/// Restriction to the exceptional divisor: (a, b) -> p*(i*(a)) + b xi.
template <class F>
Element<F> jp_star(const BlowCtx<F>& c, const BlowUpElement<F>& x) {
    return add(apply_hom(*c.restrict_p, x.base), mul(x.exc, xi_elem(c)));
}

/// Canonicalizes an arbitrary (base, exc) pair, folding xi-overflow in exc
/// into the base summand.
template <class F>
BlowUpElement<F> make_blowup_element(const BlowCtx<F>& c, const Element<F>& base,
                                     const Element<F>& exc) {
    detail::check_same_ring(base.pres(), c.mring, "blow-up class");
    BlowUpElement<F> out = alpha_jp(c, exc);
    out.base = add(out.base, base);
    return out;
}

/// (a,b)(a',b') = (aa', 0) + alpha_jp(i*(a)b' + i*(a')b + b b' xi), with the
/// restrictions taken on P. Encodes the projection formula.
template <class F>
BlowUpElement<F> blowup_mul(const BlowCtx<F>& c, const BlowUpElement<F>& x,
                            const BlowUpElement<F>& y) {
    Element<F> cross = add(add(mul(apply_hom(*c.restrict_p, x.base), y.exc),
                               mul(apply_hom(*c.restrict_p, y.base), x.exc)),
                           mul(mul(x.exc, y.exc), xi_elem(c)));
    BlowUpElement<F> out = alpha_jp(c, cross);
    out.base = add(out.base, mul(x.base, y.base));
    return out;
}

/// Pairing against the fundamental class of the blow-up: the blow-down has
/// degree one, so only the base part can reach the top degree.
template <class F>
F blowup_pair(const BlowCtx<F>& c, const BlowUpElement<F>& x) {
    detail::check_same_ring(x.base.pres(), c.mring, "blowup_pair");
    for (const auto& t : x.base.terms())
        if (t.mono == c.m_top) return t.coef;
    return F::zero();
}

// GF2 wrappers on the model, covering the common case.
inline BlowUpElement<GF2> pi_star(const BlowUpModel& m, const Element<GF2>& a) {
    return pi_star(gf2_ctx(m), a);
}
inline Element<GF2> alpha_pi(const BlowUpModel& m, const BlowUpElement<GF2>& x) {
    return alpha_pi(gf2_ctx(m), x);
}
inline BlowUpElement<GF2> alpha_jp(const BlowUpModel& m, const Element<GF2>& b) {
    return alpha_jp(gf2_ctx(m), b);
}
inline Element<GF2> jp_star(const BlowUpModel& m, const BlowUpElement<GF2>& x) {
    return jp_star(gf2_ctx(m), x);
}
inline BlowUpElement<GF2> blowup_mul(const BlowUpModel& m, const BlowUpElement<GF2>& x,
                                     const BlowUpElement<GF2>& y) {
    return blowup_mul(gf2_ctx(m), x, y);
}
inline GF2 blowup_pair(const BlowUpModel& m, const BlowUpElement<GF2>& x) {
    return blowup_pair(gf2_ctx(m), x);
}

/// Basis of H^k(M~): pullbacks of the degree-k basis of M, then the classes
/// alpha_jp(b xi^i) over the degree-(k-2-2i) bases of N, i <= r-2.
inline std::vector<BlowUpElement<GF2>> blowup_basis(const BlowUpModel& m, int k) {
    auto c = gf2_ctx(m);
    std::vector<BlowUpElement<GF2>> out;
    if (k < 0 || k > m.dim) return out;
    for (const auto& mono : c.mring->basis_of_degree(k))
        out.push_back(pi_star(c, monomial_elem(c.mring, mono)));
    for (int i = 0; i <= c.r - 2; ++i) {
        int d = k - 2 - 2 * i;
        if (d < 0) continue;
        for (const auto& mono : c.nring->basis_of_degree(d)) {
            Monomial pm = detail::extend_mono(mono, i);
            out.push_back({zero_elem(c.mring), monomial_elem(c.pring, pm)});
        }
    }
    return out;
}

/// Total square on the blow-up: Sq(a, b) = pi*(Sq a) + alpha_jp((1+xi) Sq b).
inline BlowUpElement<GF2> sq_blowup(const BlowUpModel& m, const BlowUpElement<GF2>& x) {
    auto c = gf2_ctx(m);
    Element<GF2> collar =
        mul(add(unit(c.pring), xi_elem(c)), sq_total(m.proj.model.sq, x.exc));
    BlowUpElement<GF2> out = alpha_jp(c, collar);
    out.base = add(out.base, sq_total(m.data.ambient.sq, x.base));
    return out;
}

// ---------------------------------------------------------------------------
// Wu classes.

/// v(P(eta_N)) = p*(v(N)) chi(Sq)(sum_i w_2i(eta_N) (1+xi)^{r-i}).
inline Element<GF2> wu_projectivization(const BlowUpModel& m) {
    auto c = gf2_ctx(m);
    Element<GF2> collar = detail::collar_series(m.proj.p_star, m.data.normal_chern,
                                                xi_elem(c).terms()[0].mono, c.r, c.r);
    return mul(apply_hom(m.proj.p_star, wu_class(m.data.center)),
               chi_sq(m.proj.model.sq, collar));
}

/// Wu class of the collar of the exceptional divisor: v(P) chi(Sq)(1+xi).
inline Element<GF2> wu_exceptional_collar(const BlowUpModel& m) {
    auto c = gf2_ctx(m);
    return mul(wu_projectivization(m),
               chi_sq(m.proj.model.sq, add(unit(c.pring), xi_elem(c))));
}

/// Divides by xi on the exceptional summand. Defined only on classes with no
/// xi^0 part.
template <class F>
Element<F> xi_shift_down(const BlowCtx<F>& c, const Element<F>& z) {
    detail::check_same_ring(z.pres(), c.pring, "xi_shift_down");
    std::vector<Term<F>> raw;
    for (const auto& t : z.terms()) {
        if (t.mono[c.xi] == 0)
            fail(ErrorKind::NotDivisible, "class has a component with no xi factor");
        Monomial m = t.mono;
        --m[c.xi];
        raw.push_back({std::move(m), t.coef});
    }
    return normal_form(c.pring, raw);
}

inline Element<GF2> xi_shift_down(const BlowUpModel& m, const Element<GF2>& z) {
    return xi_shift_down(gf2_ctx(m), z);
}

/// v(M~) = pi*(v(M)) + alpha_jp(xi^{-1}(v(collar) - i* v(M))), cross-checked
/// against the closed form with collar exponents r+1-i and against the
/// defining property of the Wu class over a full basis. Disagreement means
/// the model data is inconsistent and raises Consistency.
inline BlowUpElement<GF2> wu_blowup(const BlowUpModel& m) {
    auto c = gf2_ctx(m);
    Element<GF2> vM = wu_class(m.data.ambient);
    Element<GF2> vM_p = apply_hom(*c.restrict_p, vM);
    Element<GF2> b = xi_shift_down(c, add(wu_exceptional_collar(m), vM_p));
    BlowUpElement<GF2> v{vM, b};

    Element<GF2> closed_collar = detail::collar_series(m.proj.p_star, m.data.normal_chern,
                                                       xi_elem(c).terms()[0].mono, c.r, c.r + 1);
    Element<GF2> vbar = mul(apply_hom(m.proj.p_star, wu_class(m.data.center)),
                            chi_sq(m.proj.model.sq, closed_collar));
    if (xi_shift_down(c, add(vbar, vM_p)) != b)
        fail(ErrorKind::Consistency, "Wu class pipeline and closed form disagree");

    for (int k = 0; k <= m.dim; ++k)
        for (const auto& z : blowup_basis(m, k))
            if (blowup_pair(c, blowup_mul(c, v, z)) != blowup_pair(c, sq_blowup(m, z)))
                fail(ErrorKind::Consistency,
                     "Wu class fails its defining property in degree " + std::to_string(k));
    return v;
}

/// Wu class from the defining property alone, one GF(2) solve per degree;
/// independent of the collar formulas above.
inline BlowUpElement<GF2> wu_blowup_oracle(const BlowUpModel& m) {
    auto c = gf2_ctx(m);
    BlowUpElement<GF2> v = pi_star(c, unit(c.mring));
    for (int k = 1; k <= m.dim; ++k) {
        auto bk = blowup_basis(m, k);
        auto bc = blowup_basis(m, m.dim - k);
        if (bk.empty() && bc.empty()) continue;
        if (bk.size() != bc.size())
            fail(ErrorKind::SingularPairing,
                 "blow-up pairing is not square in degree " + std::to_string(k));
        gf2::Matrix mat(bc.size(), bk.size());
        gf2::Row rhs(bc.size(), 0);
        for (size_t row = 0; row < bc.size(); ++row) {
            for (size_t col = 0; col < bk.size(); ++col)
                mat.a[row][col] = blowup_pair(c, blowup_mul(c, bk[col], bc[row])).v;
            rhs[row] = blowup_pair(c, sq_blowup(m, bc[row])).v;
        }
        auto sol = gf2::solve_unique(std::move(mat), std::move(rhs));
        if (!sol)
            fail(ErrorKind::SingularPairing,
                 "blow-up pairing is degenerate in degree " + std::to_string(k));
        for (size_t col = 0; col < bk.size(); ++col)
            if ((*sol)[col]) v = blowup_add(v, bk[col]);
    }
    return v;
}

/// v_k(M~) = 0 iff v_k(M) = 0 and Sq^k b + xi Sq^{k-2} b kills every basis
/// class b of the exceptional summand in complementary degree. Avoids
/// computing the Wu class itself.
inline bool wu_vanishes(const BlowUpModel& m, int k) {
    if (k < 0 || k > m.dim) fail(ErrorKind::ValidationError, "degree out of range");
    auto c = gf2_ctx(m);
    const ManifoldModel& M = m.data.ambient;
    for (const auto& mono : M.ring->basis_of_degree(m.dim - k))
        if (!pair(M, sq_total(M.sq, monomial_elem(M.ring, mono))).is_zero()) return false;
    Element<GF2> xi = xi_elem(c);
    for (int i = 0; i <= c.r - 2; ++i) {
        int d = m.dim - k - 2 * i - 2;
        if (d < 0) continue;
        for (const auto& mono : c.nring->basis_of_degree(d)) {
            Element<GF2> b = monomial_elem(c.pring, detail::extend_mono(mono, i));
            Element<GF2> lhs = add(sq_i(m.proj.model.sq, b, k),
                                   mul(xi, sq_i(m.proj.model.sq, b, k - 2)));
            if (!lhs.is_zero()) return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// L-classes, over the rationals.

/// L_i(M~) = pi*(L_i(M)) + alpha_jp(xi^{-1}(L_i(S) - i*(L_i(M)))) where S is
/// the normal bundle of the exceptional divisor, with total Chern class
/// c(S) = (1-xi) sum_j c_j(eta_N) (1+xi)^{r-j}. Valid for 4i < min(2r, (n-1)/2).
inline BlowUpElement<Rational> l_class_blowup(const BlowUpModel& m, int i) {
    if (i < 0) fail(ErrorKind::ValidationError, "negative L-class index");
    if (2 * i >= m.data.r || 8 * i >= m.dim - 1)
        fail(ErrorKind::RangeViolation,
             "L_" + std::to_string(i) + " is outside the validity range of the blow-up formula");
    auto c = rational_ctx(m);
    if (!m.data.ambient.rational)
        fail(ErrorKind::ValidationError, "ambient manifold has no rational data");

    LSequence seq = l_polynomials(i);
    Element<Rational> liM = l_class(seq, m.data.ambient.rational->pontryagin, i);

    Element<Rational> collar =
        detail::collar_series(*c.p_star, m.data.rational->normal_chern,
                              xi_elem(c).terms()[0].mono, c.r, c.r);
    Element<Rational> cS = mul(sub(unit(c.pring), xi_elem(c)), collar);
    Element<Rational> liS = l_class(seq, chern_to_pontryagin(cS), i);

    Element<Rational> b = xi_shift_down(c, sub(liS, apply_hom(*c.restrict_p, liM)));
    return {liM, b};
}

// ---------------------------------------------------------------------------
// Printing: base terms carry a pi* prefix, the exceptional part is wrapped
// in a single E(...) and printed last.

template <class F>
std::string blowup_str(const BlowUpElement<F>& x) {
    if (x.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : x.base.terms()) {
        bool neg = coef_is_negative(t.coef);
        if (first) {
            if (neg) out += "-";
            first = false;
        } else {
            out += neg ? " - " : " + ";
        }
        F a = coef_abs(t.coef);
        std::string mono = mono_str(*x.base.pres(), t.mono);
        if (mono == "1")
            out += coef_str(a);
        else if (a.is_one())
            out += "pi*" + mono;
        else
            out += coef_str(a) + "*pi*" + mono;
    }
    if (!x.exc.is_zero()) {
        if (!first) out += " + ";
        out += "E(" + to_string(x.exc) + ")";
    }
    return out;
}

} // namespace wucalc
