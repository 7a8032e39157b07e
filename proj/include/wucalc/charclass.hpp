#pragma once

#include <optional>
#include <vector>

#include "wucalc/manifold.hpp"

// Characteristic-class plumbing: Wu classes of disk bundles, reduction of
// Chern classes mod 2, Pontryagin classes of complex bundles, and Hirzebruch
// L-polynomials built from the power series of sqrt(z)/tanh(sqrt(z)).

namespace wucalc {

/// A real bundle over a closed manifold: total SW class, plus the total Chern
/// class when the bundle is complex (lives in the rational companion ring).
struct BundleData {
    ManifoldModel base;
    Element<GF2> sw;
    std::optional<Element<Rational>> chern;
    std::optional<int> rank;
};

/// Coefficientwise reduction mod 2 of an integral (here: odd-denominator)
/// class into the mirror GF(2) ring.
inline Element<GF2> chern_mod2_to_sw(const Element<Rational>& c, const PresPtr<GF2>& target) {
    const auto& src = *c.pres();
    if (src.n_gens() != target->n_gens())
        fail(ErrorKind::ValidationError, "mod-2 reduction between non-mirror rings");
    for (size_t g = 0; g < src.n_gens(); ++g)
        if (src.gens()[g].name != target->gens()[g].name ||
            src.gens()[g].degree != target->gens()[g].degree)
            fail(ErrorKind::ValidationError, "mod-2 reduction between non-mirror rings");
    std::vector<Term<GF2>> raw;
    for (const auto& t : c.terms()) {
        if (t.coef.den % 2 == 0)
            fail(ErrorKind::ValidationError, "class is not 2-integral");
        if (!target->in_normal_form(t.mono))
            fail(ErrorKind::ValidationError, "reduction leaves the staircase of the mirror ring");
        raw.push_back({t.mono, GF2::from_int(t.coef.num)});
    }
    return normal_form(target, raw);
}

inline void check_chern_shape(const Element<Rational>& c) {
    if (!constant_term(c).is_one())
        fail(ErrorKind::InvalidChern, "total Chern class must have constant term 1");
    for (const auto& t : c.terms())
        if (c.pres()->degree(t.mono) % 2 != 0)
            fail(ErrorKind::InvalidChern, "Chern class with an odd-degree component");
}

inline BundleData make_bundle(ManifoldModel base, Element<GF2> sw,
                              std::optional<Element<Rational>> chern = {},
                              std::optional<int> rank = {}) {
    detail::check_same_ring(sw.pres(), base.ring, "bundle SW class");
    if (!constant_term(sw).is_one())
        fail(ErrorKind::ValidationError, "total SW class must have constant term 1");
    if (chern) {
        if (!base.rational)
            fail(ErrorKind::ValidationError, "Chern data needs a rational companion");
        detail::check_same_ring(chern->pres(), base.rational->ring, "bundle Chern class");
        check_chern_shape(*chern);
        if (rank)
            for (const auto& t : chern->terms())
                if (chern->pres()->degree(t.mono) > 2 * *rank)
                    fail(ErrorKind::InvalidChern, "Chern class exceeds the bundle rank");
        if (chern_mod2_to_sw(*chern, base.ring) != sw)
            fail(ErrorKind::ValidationError, "SW class is not the mod-2 Chern class");
    }
    return BundleData{std::move(base), std::move(sw), std::move(chern), rank};
}

/// Wu class of the disk bundle D(E): v(M) * chi(Sq)(w(E)).
inline Element<GF2> disk_bundle_wu(const BundleData& b) {
    return mul(wu_class(b.base), chi_sq(b.base.sq, b.sw));
}

/// v_i(D(E)) = 0 iff <w(E) Sq x, [M]> = 0 for every x in H^{dim-i}(M).
inline bool disk_bundle_wu_vanishes(const BundleData& b, int i) {
    for (const auto& m : b.base.ring->basis_of_degree(b.base.dim - i)) {
        Element<GF2> x = monomial_elem(b.base.ring, m);
        if (!pair(b.base, mul(b.sw, sq_total(b.base.sq, x))).is_zero()) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Chern -> Pontryagin, via sum (-1)^i p_i = c(E) c(E-bar).

/// Conjugate bundle: negate the components of degree 2 mod 4.
inline Element<Rational> chern_conjugate(const Element<Rational>& c) {
    std::vector<Term<Rational>> out;
    for (const auto& t : c.terms()) {
        Rational v = (c.pres()->degree(t.mono) % 4 == 2) ? -t.coef : t.coef;
        out.push_back({t.mono, v});
    }
    return Element<Rational>(c.pres(), std::move(out));
}

inline Element<Rational> chern_to_pontryagin(const Element<Rational>& c) {
    check_chern_shape(c);
    Element<Rational> cc = mul(c, chern_conjugate(c));
    Element<Rational> p = zero_elem(c.pres());
    for (int i = 0; 4 * i <= c.pres()->truncation(); ++i) {
        Element<Rational> comp = component(cc, 4 * i);
        if (i % 2 == 1) comp = scale(comp, Rational(-1));
        p = add(p, comp);
    }
    return p;
}

// ---------------------------------------------------------------------------
// Formal exp/log on rational elements (positive-degree arguments terminate
// against the truncation).

inline Element<Rational> exp_series(const Element<Rational>& u) {
    if (!constant_term(u).is_zero())
        fail(ErrorKind::ValidationError, "exp of a series with nonzero constant term");
    Element<Rational> acc = unit(u.pres());
    Element<Rational> term = unit(u.pres());
    for (long long m = 1; ; ++m) {
        term = scale(mul(term, u), Rational(1, m));
        if (term.is_zero()) break;
        acc = add(acc, term);
    }
    return acc;
}

inline Element<Rational> log_series(const Element<Rational>& x) {
    if (!constant_term(x).is_one())
        fail(ErrorKind::ValidationError, "log of a series with constant term != 1");
    Element<Rational> u = sub(x, unit(x.pres()));
    Element<Rational> acc = zero_elem(x.pres());
    Element<Rational> pw = unit(x.pres());
    for (long long m = 1; ; ++m) {
        pw = mul(pw, u);
        if (pw.is_zero()) break;
        acc = add(acc, scale(pw, Rational(m % 2 == 1 ? 1 : -1, m)));
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Hirzebruch L-polynomials.

/// L_0..L_k as polynomials in abstract symbols p_1..p_k (degree of p_i is 4i).
struct LSequence {
    PresPtr<Rational> symbols;
    std::vector<Element<Rational>> polys;
    int k = 0;
};

/// Builds the sequence from the characteristic series Q(z) = sqrt(z)/tanh
/// sqrt(z) = cosh(x)/(sinh(x)/x) with z = x^2, via log Q, Newton power sums
/// and a formal exp. Nothing is hard-coded beyond the factorial series.
inline LSequence l_polynomials(int k) {
    if (k < 0) fail(ErrorKind::ValidationError, "negative L-sequence length");

    PresentationBuilder<Rational> sb(4 * k);
    for (int i = 1; i <= k; ++i) sb.add_generator("p" + std::to_string(i), 4 * i);
    PresPtr<Rational> S = sb.build();

    LSequence seq{S, {}, k};
    if (k == 0) {
        seq.polys.push_back(unit(S));
        return seq;
    }

    // Q as a series in z (z of formal degree 4, one slot per power sum).
    PresentationBuilder<Rational> zb(4 * k);
    zb.add_generator("z", 4);
    PresPtr<Rational> Z = zb.build();
    Element<Rational> A = zero_elem(Z), B = zero_elem(Z);
    Rational fact(1);
    for (int n = 0; n <= k; ++n) {
        // fact = (2n)! entering A, then (2n+1)! entering B
        if (n > 0) fact = fact * Rational(2 * n - 1) * Rational(2 * n);
        Monomial zn{n};
        A = add(A, monomial_elem(Z, zn, Rational(1) / fact));
        B = add(B, monomial_elem(Z, zn, Rational(1) / (fact * Rational(2 * n + 1))));
    }
    Element<Rational> logQ = log_series(mul(A, invert_unit(B)));

    // Power sums in the symbol ring via Newton's identity.
    std::vector<Element<Rational>> s(static_cast<size_t>(k) + 1, zero_elem(S));
    std::vector<Element<Rational>> p(static_cast<size_t>(k) + 1, zero_elem(S));
    for (int i = 1; i <= k; ++i) p[i] = gen_elem(S, "p" + std::to_string(i));
    for (int n = 1; n <= k; ++n) {
        Element<Rational> sn = scale(p[n], Rational(n % 2 == 1 ? n : -n));
        for (int j = 1; j < n; ++j)
            sn = add(sn, scale(mul(p[j], s[n - j]), Rational(j % 2 == 1 ? 1 : -1)));
        s[n] = sn;
    }

    Element<Rational> U = zero_elem(S);
    for (int n = 1; n <= k; ++n) {
        Rational an = Rational::zero();
        for (const auto& t : logQ.terms())
            if (t.mono[0] == n) an = t.coef;
        U = add(U, scale(s[n], an));
    }
    Element<Rational> total = exp_series(U);
    for (int i = 0; i <= k; ++i) seq.polys.push_back(component(total, 4 * i));
    return seq;
}

/// Evaluates L_i at a concrete total Pontryagin class.
inline Element<Rational> l_class(const LSequence& seq, const Element<Rational>& p, int i) {
    if (i < 0 || i > seq.k)
        fail(ErrorKind::ValidationError, "L-sequence holds L_0..L_" + std::to_string(seq.k));
    if (!constant_term(p).is_one())
        fail(ErrorKind::ValidationError, "total Pontryagin class must have constant term 1");
    if (4 * i > p.pres()->truncation())
        fail(ErrorKind::DegreeOverflow, "L_" + std::to_string(i) + " exceeds the truncation");
    std::vector<Element<Rational>> comp(static_cast<size_t>(seq.k) + 1, zero_elem(p.pres()));
    for (int j = 1; j <= seq.k; ++j) comp[j] = component(p, 4 * j);
    Element<Rational> out = zero_elem(p.pres());
    for (const auto& t : seq.polys[i].terms()) {
        Element<Rational> prod = unit(p.pres());
        for (size_t g = 0; g < t.mono.size() && !prod.is_zero(); ++g)
            if (t.mono[g] > 0) prod = mul(prod, pow_elem(comp[g + 1], t.mono[g]));
        out = add(out, scale(prod, t.coef));
    }
    return out;
}

} // namespace wucalc
