#pragma once

#include <map>
#include <string>
#include <vector>

#include "wucalc/gring.hpp"

// Steenrod squares on mod-2 presentations. The total square Sq is the ring
// map fixed by its values on generators (Cartan), with Sq(g) = g + g^2 by
// default; chi_sq inverts it degree by degree.

namespace wucalc {

struct SqReport {
    bool ok = true;
    std::string message;
};

/// Total-square images for every generator of a mod-2 presentation.
/// Each image must have bottom component g, top component g^2 (after
/// normalization) and nothing outside [deg g, 2 deg g].
class SqAction {
public:
    explicit SqAction(PresPtr<GF2> pres,
                      const std::map<std::string, Element<GF2>>& declared = {})
        : pres_(std::move(pres)) {
        for (const auto& [name, img] : declared)
            if (pres_->find(name) < 0)
                fail(ErrorKind::UnknownGenerator,
                     "square image for unknown generator '" + name + "'");
        images_.reserve(pres_->n_gens());
        for (size_t g = 0; g < pres_->n_gens(); ++g) {
            const std::string& name = pres_->gens()[g].name;
            auto it = declared.find(name);
            if (it != declared.end()) {
                detail::check_same_ring(it->second.pres(), pres_, "square image");
                images_.push_back(it->second);
            } else {
                Element<GF2> ge = gen_elem(pres_, name);
                images_.push_back(add(ge, mul(ge, ge)));
            }
            check_shape(g);
        }
    }

    const PresPtr<GF2>& pres() const { return pres_; }
    const Element<GF2>& image(size_t g) const { return images_[g]; }

private:
    void check_shape(size_t g) const {
        const auto& gen = pres_->gens()[g];
        const Element<GF2>& img = images_[g];
        Element<GF2> ge = gen_elem(pres_, gen.name);
        int d = gen.degree;
        if (component(img, d) != ge)
            fail(ErrorKind::ValidationError,
                 "Sq(" + gen.name + ") must start with " + gen.name);
        if (component(img, 2 * d) != mul(ge, ge))
            fail(ErrorKind::ValidationError,
                 "Sq(" + gen.name + ") must end with " + gen.name + "^2");
        for (const auto& t : img.terms()) {
            int td = pres_->degree(t.mono);
            if (td < d || td > 2 * d)
                fail(ErrorKind::ValidationError,
                     "Sq(" + gen.name + ") has a component outside [deg, 2*deg]");
        }
    }

    PresPtr<GF2> pres_;
    std::vector<Element<GF2>> images_;
};

/// Total Steenrod square, extended multiplicatively over monomials and
/// additively over terms.
inline Element<GF2> sq_total(const SqAction& sq, const Element<GF2>& x) {
    detail::check_same_ring(x.pres(), sq.pres(), "sq_total");
    Element<GF2> out = zero_elem(sq.pres());
    for (const auto& t : x.terms()) {
        Element<GF2> prod = unit(sq.pres());
        for (size_t g = 0; g < t.mono.size() && !prod.is_zero(); ++g)
            if (t.mono[g] > 0) prod = mul(prod, pow_elem(sq.image(g), t.mono[g]));
        out = add(out, prod);
    }
    return out;
}

/// Sq^i on a homogeneous class; i < 0 gives 0 (convenient for the blow-up
/// formulas, where Sq^{i-2} appears for small i).
inline Element<GF2> sq_i(const SqAction& sq, const Element<GF2>& x, int i) {
    if (x.is_zero() || i < 0) return zero_elem(sq.pres());
    int k = homogeneous_degree(x);
    return component(sq_total(sq, x), k + i);
}

/// chi(Sq): the inverse of the total square, solved degreewise via
/// x_k = y_k + sum_{i>0} Sq^i x_{k-i}. Requires constant term 1.
inline Element<GF2> chi_sq(const SqAction& sq, const Element<GF2>& y) {
    detail::check_same_ring(y.pres(), sq.pres(), "chi_sq");
    if (!constant_term(y).is_one())
        fail(ErrorKind::NotAUnit, "chi_sq needs constant term 1");
    int top = sq.pres()->truncation();
    std::vector<Element<GF2>> comp(static_cast<size_t>(top) + 1, zero_elem(sq.pres()));
    std::vector<Element<GF2>> sq_of_comp(static_cast<size_t>(top) + 1, zero_elem(sq.pres()));
    comp[0] = unit(sq.pres());
    sq_of_comp[0] = comp[0];
    Element<GF2> out = comp[0];
    for (int k = 1; k <= top; ++k) {
        Element<GF2> xk = component(y, k);
        for (int i = 1; i < k; ++i)
            xk = add(xk, component(sq_of_comp[k - i], k));
        comp[k] = xk;
        sq_of_comp[k] = sq_total(sq, xk);
        out = add(out, xk);
    }
    return out;
}

/// Checks that Sq descends through every rule: Sq(g)^e + Sq(replacement)
/// must normalize to zero. Reports the first failure instead of throwing,
/// so callers can surface the offending rule.
inline SqReport validate_sq(const SqAction& sq) {
    const auto& P = *sq.pres();
    for (size_t g = 0; g < P.n_gens(); ++g) {
        const auto& rule = P.rule(g);
        if (!rule) continue;
        Element<GF2> lhs = pow_elem(sq.image(g), rule->exponent);
        Element<GF2> repl(sq.pres(), rule->replacement);
        Element<GF2> rhs = sq_total(sq, repl);
        if (lhs != rhs)
            return {false, "Sq is incompatible with the rule on '" + P.gens()[g].name + "'"};
    }
    return {true, ""};
}

} // namespace wucalc
