#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wucalc/builtins.hpp"

// The embedding obstruction for a codimension-2 inclusion N^2n in M^{2n+2}
// (n odd) with dual class u in H^2(M): the ambient sphere of the pair embeds
// nicely only if <Sq(x)/(1+u), [M]> = 0 for all x in H^{n+1}(M). Also the
// blow-up variant, where u picks up the exceptional class.

namespace wucalc {

struct EmbeddingContext {
    ManifoldModel ambient; // M, dimension 2n+2
    int n = 0;             // odd
    Element<GF2> u;        // dual class of N in H^2(M)
    std::string label;
    std::vector<std::string> warnings;
};

inline EmbeddingContext make_embedding_context(ManifoldModel ambient, int n, Element<GF2> u,
                                               std::string label = "") {
    if (n < 1 || n % 2 == 0)
        fail(ErrorKind::BadParity, "the obstruction is set up for odd n >= 1");
    if (ambient.dim != 2 * n + 2)
        fail(ErrorKind::ValidationError, "ambient dimension must be 2n+2");
    detail::check_same_ring(u.pres(), ambient.ring, "dual class");
    if (!u.is_zero() && homogeneous_degree(u) != 2)
        fail(ErrorKind::ValidationError, "dual class must be homogeneous of degree 2");
    std::vector<std::string> warnings;
    if (n == 1 || n == 3 || n == 7)
        warnings.push_back("n = " + std::to_string(n) +
                           " admits framings that weaken the geometric conclusion; the class "
                           "computation is unaffected");
    return EmbeddingContext{std::move(ambient), n, std::move(u), std::move(label),
                            std::move(warnings)};
}

/// Degree-d hypersurface in CP^{n+1}: the dual class is d times the
/// hyperplane class, so only the parity of d survives mod 2.
inline EmbeddingContext hypersurface_ctx(int n, int d) {
    if (n < 1 || n % 2 == 0)
        fail(ErrorKind::BadParity, "the obstruction is set up for odd n >= 1");
    if (d < 1) fail(ErrorKind::ValidationError, "hypersurface degree must be positive");
    ManifoldModel m = cp(n + 1);
    Element<GF2> u = scale(gen_elem(m.ring, "x"), GF2::from_int(d));
    return make_embedding_context(std::move(m), n, std::move(u),
                                  "degree-" + std::to_string(d) + " hypersurface");
}

/// <Sq(x) (1+u)^{-1}, [M]> = 0 for every x in H^{n+1}(M)?
inline bool obstruction_vanishes(const EmbeddingContext& ctx) {
    const ManifoldModel& m = ctx.ambient;
    Element<GF2> w = invert_unit(add(unit(m.ring), ctx.u));
    for (const auto& mono : m.ring->basis_of_degree(ctx.n + 1))
        if (!pair(m, mul(w, sq_total(m.sq, monomial_elem(m.ring, mono)))).is_zero())
            return false;
    return true;
}

/// A basis monomial with nonzero obstruction pairing, if one exists.
inline std::optional<Element<GF2>> obstruction_witness(const EmbeddingContext& ctx) {
    const ManifoldModel& m = ctx.ambient;
    Element<GF2> w = invert_unit(add(unit(m.ring), ctx.u));
    for (const auto& mono : m.ring->basis_of_degree(ctx.n + 1)) {
        Element<GF2> x = monomial_elem(m.ring, mono);
        if (!pair(m, mul(w, sq_total(m.sq, x))).is_zero()) return x;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// After blowing up M along a center disjoint from the obstruction data, the
// dual class of the proper transform is pi*(u) + alpha_jp(1).

struct BlowUpEmbeddingContext {
    BlowUpModel model; // blow-up of M, dimension 2n+2
    int n = 0;
    Element<GF2> u; // dual class downstairs, in H^2(M)
    std::vector<std::string> warnings;
};

inline BlowUpEmbeddingContext make_blowup_embedding_context(BlowUpModel model, int n,
                                                            Element<GF2> u) {
    if (n < 1 || n % 2 == 0)
        fail(ErrorKind::BadParity, "the obstruction is set up for odd n >= 1");
    if (model.dim != 2 * n + 2)
        fail(ErrorKind::ValidationError, "blow-up dimension must be 2n+2");
    detail::check_same_ring(u.pres(), model.data.ambient.ring, "dual class");
    if (!u.is_zero() && homogeneous_degree(u) != 2)
        fail(ErrorKind::ValidationError, "dual class must be homogeneous of degree 2");
    std::vector<std::string> warnings;
    if (n == 1 || n == 3 || n == 7)
        warnings.push_back("n = " + std::to_string(n) +
                           " admits framings that weaken the geometric conclusion; the class "
                           "computation is unaffected");
    return BlowUpEmbeddingContext{std::move(model), n, std::move(u), std::move(warnings)};
}

/// Dual class upstairs: u~ = pi*(u) + alpha_jp(1).
inline BlowUpElement<GF2> u_tilde(const BlowUpEmbeddingContext& ctx) {
    auto c = gf2_ctx(ctx.model);
    return blowup_add(pi_star(c, ctx.u), alpha_jp(c, unit(c.pring)));
}

/// Geometric series for (1 + z)^{-1} under the blow-up product; z must have
/// zero constant part. Needs Gysin data as soon as a power overflows.
inline BlowUpElement<GF2> blowup_invert_one_plus(const BlowUpModel& m,
                                                 const BlowUpElement<GF2>& z) {
    auto c = gf2_ctx(m);
    if (!constant_term(z.base).is_zero())
        fail(ErrorKind::NotAUnit, "geometric series needs a positive-degree argument");
    BlowUpElement<GF2> acc = pi_star(c, unit(c.mring));
    BlowUpElement<GF2> pw = acc;
    for (int k = 0; k <= m.dim; ++k) {
        pw = blowup_mul(c, pw, z);
        if (pw.is_zero()) break;
        acc = blowup_add(acc, pw);
    }
    return acc;
}

/// <Sq(x) (1+u~)^{-1}, [M~]> = 0 for every basis class x of H^{n+1}(M~)?
inline bool blowup_obstruction_vanishes(const BlowUpEmbeddingContext& ctx) {
    const BlowUpModel& m = ctx.model;
    auto c = gf2_ctx(m);
    BlowUpElement<GF2> w = blowup_invert_one_plus(m, u_tilde(ctx));
    for (const auto& z : blowup_basis(m, ctx.n + 1))
        if (!blowup_pair(c, blowup_mul(c, w, sq_blowup(m, z))).is_zero()) return false;
    return true;
}

/// Witness extraction for the blow-up variant, mirroring obstruction_witness.
inline std::optional<BlowUpElement<GF2>> blowup_obstruction_witness(
    const BlowUpEmbeddingContext& ctx) {
    const BlowUpModel& m = ctx.model;
    auto c = gf2_ctx(m);
    BlowUpElement<GF2> w = blowup_invert_one_plus(m, u_tilde(ctx));
    for (const auto& z : blowup_basis(m, ctx.n + 1))
        if (!blowup_pair(c, blowup_mul(c, w, sq_blowup(m, z))).is_zero()) return z;
    return std::nullopt;
}

} // namespace wucalc
