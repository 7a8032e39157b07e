#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wucalc/gf2solve.hpp"
#include "wucalc/steenrod.hpp"

// Closed-manifold models: a mod-2 presentation truncated at the dimension,
// a fundamental (top) monomial, the total Stiefel-Whitney class and a Steenrod
// action, plus an optional rational companion carrying the Pontryagin class.

namespace wucalc {

struct RationalCompanion {
    PresPtr<Rational> ring;
    Element<Rational> pontryagin; // total class, constant term 1
    Monomial top;
};

struct ManifoldModel {
    PresPtr<GF2> ring;
    int dim = 0;
    Monomial top;
    Element<GF2> sw; // total Stiefel-Whitney class of the tangent bundle
    SqAction sq;
    std::optional<RationalCompanion> rational;
    std::string name; // used for printing and builtin lookup
};

/// Evaluation against the fundamental class: the coefficient of the top
/// monomial in the degree-n part of x.
inline GF2 pair(const ManifoldModel& m, const Element<GF2>& x) {
    detail::check_same_ring(x.pres(), m.ring, "pair");
    for (const auto& t : x.terms())
        if (t.mono == m.top) return t.coef;
    return GF2::zero();
}

inline Rational pair_q(const RationalCompanion& c, const Element<Rational>& x) {
    detail::check_same_ring(x.pres(), c.ring, "pair");
    for (const auto& t : x.terms())
        if (t.mono == c.top) return t.coef;
    return Rational::zero();
}

/// Nondegeneracy of the cup pairing H^k x H^{n-k} -> GF(2) in degree k.
inline bool poincare_check(const ManifoldModel& m, int k) {
    auto bk = m.ring->basis_of_degree(k);
    auto bc = m.ring->basis_of_degree(m.dim - k);
    if (bk.size() != bc.size()) return false;
    gf2::Matrix mat(bc.size(), bk.size());
    for (size_t r = 0; r < bc.size(); ++r)
        for (size_t c = 0; c < bk.size(); ++c)
            mat.a[r][c] = pair(m, mul(monomial_elem(m.ring, bc[r]),
                                      monomial_elem(m.ring, bk[c]))).v;
    return gf2::invertible(mat);
}

inline ManifoldModel make_manifold(PresPtr<GF2> ring, int dim, Monomial top, Element<GF2> sw,
                                   SqAction sq, std::optional<RationalCompanion> rational = {},
                                   std::string name = "manifold") {
    if (ring->truncation() != dim)
        fail(ErrorKind::ValidationError, "presentation must be truncated at the dimension");
    if (!ring->in_normal_form(top) || ring->degree(top) != dim)
        fail(ErrorKind::ValidationError, "top monomial is not a normal-form class in degree " +
                                             std::to_string(dim));
    auto top_basis = ring->basis_of_degree(dim);
    if (top_basis.size() != 1 || top_basis[0] != top)
        fail(ErrorKind::ValidationError, "top degree is not one-dimensional on the top monomial");
    detail::check_same_ring(sw.pres(), ring, "total SW class");
    if (!constant_term(sw).is_one())
        fail(ErrorKind::ValidationError, "total SW class must have constant term 1");
    detail::check_same_ring(sq.pres(), ring, "Steenrod action");
    SqReport rep = validate_sq(sq);
    if (!rep.ok) fail(ErrorKind::ValidationError, rep.message);

    if (rational) {
        const auto& q = *rational;
        if (q.ring->truncation() != dim || q.ring->n_gens() != ring->n_gens())
            fail(ErrorKind::ValidationError, "rational companion does not mirror the ring");
        for (size_t g = 0; g < ring->n_gens(); ++g)
            if (q.ring->gens()[g].name != ring->gens()[g].name ||
                q.ring->gens()[g].degree != ring->gens()[g].degree)
                fail(ErrorKind::ValidationError, "rational companion generators differ");
        if (q.top != top)
            fail(ErrorKind::ValidationError, "rational companion has a different top monomial");
        detail::check_same_ring(q.pontryagin.pres(), q.ring, "Pontryagin class");
        if (!constant_term(q.pontryagin).is_one())
            fail(ErrorKind::ValidationError, "total Pontryagin class must have constant term 1");
        for (const auto& t : q.pontryagin.terms())
            if (q.ring->degree(t.mono) % 4 != 0)
                fail(ErrorKind::ValidationError,
                     "Pontryagin class has a component of degree not divisible by 4");
    }
    return ManifoldModel{std::move(ring), dim,           std::move(top), std::move(sw),
                         std::move(sq),   std::move(rational), std::move(name)};
}

/// Wu class via Sq(v) = w: the antipode applied to the total SW class.
inline Element<GF2> wu_class(const ManifoldModel& m) { return chi_sq(m.sq, m.sw); }

/// Wu class from the defining property <v cup x, [M]> = <Sq x, [M]>, one
/// GF(2) linear solve per degree. Independent of the SW class, so it serves
/// as the oracle for wu_class and for the blow-up formulas downstream.
inline Element<GF2> wu_class_oracle(const ManifoldModel& m) {
    Element<GF2> v = unit(m.ring);
    for (int k = 1; k <= m.dim; ++k) {
        auto bk = m.ring->basis_of_degree(k);
        auto bc = m.ring->basis_of_degree(m.dim - k);
        if (bk.empty() && bc.empty()) continue;
        if (bk.size() != bc.size())
            fail(ErrorKind::SingularPairing,
                 "pairing is not square in degree " + std::to_string(k));
        gf2::Matrix mat(bc.size(), bk.size());
        gf2::Row rhs(bc.size(), 0);
        for (size_t r = 0; r < bc.size(); ++r) {
            Element<GF2> x = monomial_elem(m.ring, bc[r]);
            for (size_t c = 0; c < bk.size(); ++c)
                mat.a[r][c] = pair(m, mul(monomial_elem(m.ring, bk[c]), x)).v;
            rhs[r] = pair(m, sq_total(m.sq, x)).v;
        }
        auto sol = gf2::solve_unique(std::move(mat), std::move(rhs));
        if (!sol)
            fail(ErrorKind::SingularPairing,
                 "cup pairing is degenerate in degree " + std::to_string(k));
        for (size_t c = 0; c < bk.size(); ++c)
            if ((*sol)[c]) v = add(v, monomial_elem(m.ring, bk[c]));
    }
    return v;
}

} // namespace wucalc
