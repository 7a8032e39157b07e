#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

#include "wucalc/coeff.hpp"
#include "wucalc/error.hpp"

// Finitely presented graded-commutative rings over GF(2) or Q, truncated at a
// top degree. Relations form a triangular rewrite system: at most one rule per
// generator, with a pure power g^e as left-hand side. Pure-power leading
// monomials are pairwise coprime, so the system is confluent and rewriting to
// the staircase (all ruled exponents below their bound) gives canonical normal
// forms; the staircase monomials of each degree are a vector-space basis.

namespace wucalc {

/// Exponent vector, one entry per generator in declaration order.
using Monomial = std::vector<int>;

template <class F>
struct Term {
    Monomial mono;
    F coef;
};

struct Generator {
    std::string name;
    int degree = 0;
};

template <class F>
struct Rule {
    int exponent = 0;                 // LHS is g^exponent
    std::vector<Term<F>> replacement; // normal form, strictly below g^exponent
};

template <class F>
class Presentation {
public:
    Presentation(std::vector<Generator> gens, std::vector<std::optional<Rule<F>>> rules,
                 int truncation)
        : gens_(std::move(gens)), rules_(std::move(rules)), trunc_(truncation) {}

    const std::vector<Generator>& gens() const { return gens_; }
    size_t n_gens() const { return gens_.size(); }
    int truncation() const { return trunc_; }
    const std::optional<Rule<F>>& rule(size_t g) const { return rules_[g]; }

    int find(std::string_view name) const {
        for (size_t i = 0; i < gens_.size(); ++i)
            if (gens_[i].name == name) return static_cast<int>(i);
        return -1;
    }

    int degree(const Monomial& m) const {
        int d = 0;
        for (size_t i = 0; i < m.size(); ++i) d += m[i] * gens_[i].degree;
        return d;
    }

    /// Graded order, ties broken lexicographically with later generators
    /// heavier. Makes every admissible rule strictly decreasing.
    bool mono_less(const Monomial& a, const Monomial& b) const {
        int da = degree(a), db = degree(b);
        if (da != db) return da < db;
        for (size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    }

    bool in_normal_form(const Monomial& m) const {
        if (degree(m) > trunc_) return false;
        for (size_t g = 0; g < m.size(); ++g)
            if (rules_[g] && m[g] >= rules_[g]->exponent) return false;
        return true;
    }

    /// All staircase monomials of degree k, ascending in the monomial order.
    std::vector<Monomial> basis_of_degree(int k) const {
        std::vector<Monomial> out;
        if (k < 0 || k > trunc_) return out;
        Monomial cur(gens_.size(), 0);
        enumerate(0, k, cur, out);
        std::sort(out.begin(), out.end(),
                  [this](const Monomial& a, const Monomial& b) { return mono_less(a, b); });
        return out;
    }

    friend bool same_presentation(const Presentation& a, const Presentation& b) {
        if (&a == &b) return true;
        if (a.trunc_ != b.trunc_ || a.gens_.size() != b.gens_.size()) return false;
        for (size_t i = 0; i < a.gens_.size(); ++i)
            if (a.gens_[i].name != b.gens_[i].name || a.gens_[i].degree != b.gens_[i].degree)
                return false;
        for (size_t g = 0; g < a.rules_.size(); ++g) {
            const auto &ra = a.rules_[g], &rb = b.rules_[g];
            if (ra.has_value() != rb.has_value()) return false;
            if (!ra) continue;
            if (ra->exponent != rb->exponent ||
                ra->replacement.size() != rb->replacement.size())
                return false;
            for (size_t t = 0; t < ra->replacement.size(); ++t)
                if (ra->replacement[t].mono != rb->replacement[t].mono ||
                    ra->replacement[t].coef != rb->replacement[t].coef)
                    return false;
        }
        return true;
    }

private:
    void enumerate(size_t g, int remaining, Monomial& cur, std::vector<Monomial>& out) const {
        if (g == gens_.size()) {
            if (remaining == 0) out.push_back(cur);
            return;
        }
        int d = gens_[g].degree;
        int max_e = remaining / d;
        if (rules_[g]) max_e = std::min(max_e, rules_[g]->exponent - 1);
        for (int e = 0; e <= max_e; ++e) {
            cur[g] = e;
            enumerate(g + 1, remaining - e * d, cur, out);
        }
        cur[g] = 0;
    }

    std::vector<Generator> gens_;
    std::vector<std::optional<Rule<F>>> rules_;
    int trunc_;

    template <class G>
    friend class PresentationBuilder;
};

template <class F>
using PresPtr = std::shared_ptr<const Presentation<F>>;

namespace detail {

template <class F>
void check_same_ring(const PresPtr<F>& a, const PresPtr<F>& b, const char* op) {
    if (a == b) return;
    if (a && b && same_presentation(*a, *b)) return;
    fail(ErrorKind::PresentationMismatch, std::string(op) + " across different presentations");
}

// Rewrites c*m into the staircase, accumulating into `acc`. Every step
// replaces a monomial by strictly smaller ones, so this terminates.
template <class F>
void reduce_term_into(const Presentation<F>& P, const Monomial& m, const F& c,
                      std::map<Monomial, F>& acc) {
    if (c.is_zero() || P.degree(m) > P.truncation()) return;
    for (size_t g = 0; g < m.size(); ++g) {
        const auto& rule = P.rule(g);
        if (rule && m[g] >= rule->exponent) {
            Monomial rest = m;
            rest[g] -= rule->exponent;
            for (const auto& t : rule->replacement) {
                Monomial prod = t.mono;
                for (size_t i = 0; i < prod.size(); ++i) prod[i] += rest[i];
                reduce_term_into(P, prod, c * t.coef, acc);
            }
            return;
        }
    }
    auto it = acc.find(m);
    if (it == acc.end())
        acc.emplace(m, c);
    else
        it->second = it->second + c;
}

template <class F>
std::vector<Term<F>> collect_sorted(const Presentation<F>& P, std::map<Monomial, F>& acc) {
    std::vector<Term<F>> out;
    for (auto& [m, c] : acc)
        if (!c.is_zero()) out.push_back({m, c});
    std::sort(out.begin(), out.end(), [&P](const Term<F>& a, const Term<F>& b) {
        return P.mono_less(a.mono, b.mono);
    });
    return out;
}

} // namespace detail

/// An element in canonical form: staircase monomials, ascending, no zero
/// coefficients. Immutable by convention; all operations return fresh values.
template <class F>
class Element {
public:
    Element() = default;
    Element(PresPtr<F> pres, std::vector<Term<F>> terms)
        : pres_(std::move(pres)), terms_(std::move(terms)) {}

    const PresPtr<F>& pres() const { return pres_; }
    const std::vector<Term<F>>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    friend bool operator==(const Element& a, const Element& b) {
        if (!(a.pres_ == b.pres_ ||
              (a.pres_ && b.pres_ && same_presentation(*a.pres_, *b.pres_))))
            return false;
        if (a.terms_.size() != b.terms_.size()) return false;
        for (size_t i = 0; i < a.terms_.size(); ++i)
            if (a.terms_[i].mono != b.terms_[i].mono || a.terms_[i].coef != b.terms_[i].coef)
                return false;
        return true;
    }
    friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }

private:
    PresPtr<F> pres_;
    std::vector<Term<F>> terms_;
};

template <class F>
Element<F> normal_form(const PresPtr<F>& pres, const std::vector<Term<F>>& raw) {
    std::map<Monomial, F> acc;
    for (const auto& t : raw) {
        if (t.mono.size() != pres->n_gens())
            fail(ErrorKind::ValidationError, "monomial has wrong number of exponents");
        for (int e : t.mono)
            if (e < 0) fail(ErrorKind::ValidationError, "negative exponent");
        detail::reduce_term_into(*pres, t.mono, t.coef, acc);
    }
    return Element<F>(pres, detail::collect_sorted(*pres, acc));
}

template <class F>
Element<F> zero_elem(const PresPtr<F>& pres) {
    return Element<F>(pres, {});
}

template <class F>
Element<F> unit(const PresPtr<F>& pres) {
    return normal_form(pres, {{Monomial(pres->n_gens(), 0), F::one()}});
}

template <class F>
Element<F> monomial_elem(const PresPtr<F>& pres, const Monomial& m, F c = F::one()) {
    return normal_form(pres, {{m, c}});
}

template <class F>
Element<F> gen_elem(const PresPtr<F>& pres, std::string_view name) {
    int g = pres->find(name);
    if (g < 0) fail(ErrorKind::UnknownGenerator, "no generator named '" + std::string(name) + "'");
    Monomial m(pres->n_gens(), 0);
    m[g] = 1;
    return monomial_elem(pres, m);
}

template <class F>
Element<F> add(const Element<F>& a, const Element<F>& b) {
    detail::check_same_ring(a.pres(), b.pres(), "add");
    const auto& P = *a.pres();
    std::vector<Term<F>> out;
    out.reserve(a.terms().size() + b.terms().size());
    auto ia = a.terms().begin(), ib = b.terms().begin();
    while (ia != a.terms().end() && ib != b.terms().end()) {
        if (ia->mono == ib->mono) {
            F c = ia->coef + ib->coef;
            if (!c.is_zero()) out.push_back({ia->mono, c});
            ++ia, ++ib;
        } else if (P.mono_less(ia->mono, ib->mono)) {
            out.push_back(*ia++);
        } else {
            out.push_back(*ib++);
        }
    }
    out.insert(out.end(), ia, a.terms().end());
    out.insert(out.end(), ib, b.terms().end());
    return Element<F>(a.pres(), std::move(out));
}

template <class F>
Element<F> scale(const Element<F>& a, const F& c) {
    if (c.is_zero()) return zero_elem(a.pres());
    std::vector<Term<F>> out;
    out.reserve(a.terms().size());
    for (const auto& t : a.terms()) {
        F p = t.coef * c;
        if (!p.is_zero()) out.push_back({t.mono, p});
    }
    return Element<F>(a.pres(), std::move(out));
}

template <class F>
Element<F> sub(const Element<F>& a, const Element<F>& b) {
    return add(a, scale(b, -F::one()));
}

template <class F>
Element<F> mul(const Element<F>& a, const Element<F>& b) {
    detail::check_same_ring(a.pres(), b.pres(), "mul");
    const auto& P = *a.pres();
    std::map<Monomial, F> acc;
    for (const auto& ta : a.terms())
        for (const auto& tb : b.terms()) {
            Monomial prod = ta.mono;
            for (size_t i = 0; i < prod.size(); ++i) prod[i] += tb.mono[i];
            detail::reduce_term_into(P, prod, ta.coef * tb.coef, acc);
        }
    return Element<F>(a.pres(), detail::collect_sorted(P, acc));
}

template <class F>
Element<F> pow_elem(const Element<F>& a, int e) {
    if (e < 0) fail(ErrorKind::ValidationError, "negative power of a ring element");
    Element<F> acc = unit(a.pres());
    for (int i = 0; i < e; ++i) {
        acc = mul(acc, a);
        if (acc.is_zero()) break;
    }
    return acc;
}

template <class F>
Element<F> operator+(const Element<F>& a, const Element<F>& b) { return add(a, b); }
template <class F>
Element<F> operator-(const Element<F>& a, const Element<F>& b) { return sub(a, b); }
template <class F>
Element<F> operator*(const Element<F>& a, const Element<F>& b) { return mul(a, b); }

/// Terms of degree exactly k.
template <class F>
Element<F> component(const Element<F>& x, int k) {
    std::vector<Term<F>> out;
    for (const auto& t : x.terms())
        if (x.pres()->degree(t.mono) == k) out.push_back(t);
    return Element<F>(x.pres(), std::move(out));
}

template <class F>
F constant_term(const Element<F>& x) {
    if (!x.terms().empty() && x.pres()->degree(x.terms().front().mono) == 0)
        return x.terms().front().coef;
    return F::zero();
}

template <class F>
int max_degree(const Element<F>& x) {
    return x.is_zero() ? -1 : x.pres()->degree(x.terms().back().mono);
}

template <class F>
int min_degree(const Element<F>& x) {
    return x.is_zero() ? -1 : x.pres()->degree(x.terms().front().mono);
}

/// Degree of a homogeneous nonzero element; NonHomogeneous if terms mix
/// degrees. Callers should handle zero before asking.
template <class F>
int homogeneous_degree(const Element<F>& x) {
    if (x.is_zero())
        fail(ErrorKind::NonHomogeneous, "zero element has no preferred degree");
    int d = min_degree(x);
    if (d != max_degree(x))
        fail(ErrorKind::NonHomogeneous, "element mixes degrees " + std::to_string(d) + " and " +
                                            std::to_string(max_degree(x)));
    return d;
}

/// Inverse of c*(1 - u) with c an invertible constant and u of positive
/// degree: the truncated geometric series. NotAUnit when the constant term
/// is not invertible.
template <class F>
Element<F> invert_unit(const Element<F>& x) {
    F c = constant_term(x);
    if (c.is_zero()) fail(ErrorKind::NotAUnit, "constant term is not invertible");
    F cinv = c.inverse();
    Element<F> t = sub(unit(x.pres()), scale(x, cinv)); // 1 - x/c, positive degree
    Element<F> acc = unit(x.pres());
    Element<F> pw = t;
    while (!pw.is_zero()) {
        acc = add(acc, pw);
        pw = mul(pw, t);
    }
    return scale(acc, cinv);
}

// ---------------------------------------------------------------------------
// Graded ring homomorphisms and degree-shifting linear maps.

namespace detail {

template <class F>
Element<F> apply_images(const PresPtr<F>& target, const std::vector<Element<F>>& images,
                        const Element<F>& x) {
    Element<F> out = zero_elem(target);
    for (const auto& t : x.terms()) {
        Element<F> prod = unit(target);
        for (size_t g = 0; g < t.mono.size() && !prod.is_zero(); ++g)
            if (t.mono[g] > 0) prod = mul(prod, pow_elem(images[g], t.mono[g]));
        out = add(out, scale(prod, t.coef));
    }
    return out;
}

} // namespace detail

/// Degree-preserving ring map, fixed by generator images. Construction checks
/// that every source rule maps to a relation that normalizes to zero.
template <class F>
struct RingHom {
    PresPtr<F> source, target;
    std::vector<Element<F>> images; // one per source generator
};

template <class F>
RingHom<F> make_ring_hom(const PresPtr<F>& source, const PresPtr<F>& target,
                         std::vector<Element<F>> images) {
    if (images.size() != source->n_gens())
        fail(ErrorKind::ValidationError, "ring map needs one image per generator");
    for (size_t g = 0; g < images.size(); ++g) {
        detail::check_same_ring(images[g].pres(), target, "ring map image");
        if (!images[g].is_zero() &&
            homogeneous_degree(images[g]) != source->gens()[g].degree)
            fail(ErrorKind::ValidationError,
                 "image of generator '" + source->gens()[g].name + "' has the wrong degree");
    }
    for (size_t g = 0; g < source->n_gens(); ++g) {
        const auto& rule = source->rule(g);
        if (!rule) continue;
        Element<F> lhs = pow_elem(images[g], rule->exponent);
        Element<F> repl = normal_form(source, rule->replacement);
        Element<F> rhs = detail::apply_images(target, images, repl);
        if (lhs != rhs)
            fail(ErrorKind::ValidationError, "ring map does not respect the rule on '" +
                                                 source->gens()[g].name + "'");
    }
    return RingHom<F>{source, target, std::move(images)};
}

template <class F>
Element<F> apply_hom(const RingHom<F>& h, const Element<F>& x) {
    detail::check_same_ring(x.pres(), h.source, "ring map argument");
    return detail::apply_images(h.target, h.images, x);
}

template <class F>
RingHom<F> compose(const RingHom<F>& outer, const RingHom<F>& inner) {
    detail::check_same_ring(inner.target, outer.source, "composition");
    std::vector<Element<F>> images;
    images.reserve(inner.images.size());
    for (const auto& img : inner.images)
        images.push_back(detail::apply_images(outer.target, outer.images, img));
    return RingHom<F>{inner.source, outer.target, std::move(images)};
}

/// Additive map raising degree by `shift`, given on every basis monomial
/// whose image degree still fits under the target truncation (Gysin maps and
/// friends). Images for degrees that would overflow are implicitly zero.
template <class F>
struct LinearMap {
    PresPtr<F> source, target;
    int shift = 0;
    std::map<Monomial, Element<F>> images;
};

template <class F>
LinearMap<F> make_linear_map(const PresPtr<F>& source, const PresPtr<F>& target, int shift,
                             std::map<Monomial, Element<F>> images) {
    for (const auto& [m, img] : images) {
        if (!source->in_normal_form(m))
            fail(ErrorKind::ValidationError, "linear map keyed by a non-basis monomial");
        detail::check_same_ring(img.pres(), target, "linear map image");
        if (!img.is_zero() && homogeneous_degree(img) != source->degree(m) + shift)
            fail(ErrorKind::ValidationError, "linear map image has the wrong degree");
    }
    for (int k = 0; k <= source->truncation(); ++k) {
        if (k + shift > target->truncation()) continue;
        for (const auto& m : source->basis_of_degree(k))
            if (!images.count(m))
                fail(ErrorKind::ValidationError,
                     "linear map missing an image in degree " + std::to_string(k));
    }
    return LinearMap<F>{source, target, shift, std::move(images)};
}

template <class F>
Element<F> apply_hom(const LinearMap<F>& h, const Element<F>& x) {
    detail::check_same_ring(x.pres(), h.source, "linear map argument");
    Element<F> out = zero_elem(h.target);
    for (const auto& t : x.terms()) {
        if (h.source->degree(t.mono) + h.shift > h.target->truncation()) continue;
        auto it = h.images.find(t.mono);
        if (it == h.images.end())
            fail(ErrorKind::ValidationError, "linear map has no image for a basis monomial");
        out = add(out, scale(it->second, t.coef));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Presentation builder. Rules may be given as expression strings; they are
// parsed against the bare polynomial ring, validated (homogeneous, strictly
// decreasing, one per generator), then stored in normal form.

template <class F>
Element<F> parse_expression(const PresPtr<F>& pres, std::string_view text);

template <class F>
class PresentationBuilder {
public:
    explicit PresentationBuilder(int truncation) : trunc_(truncation) {}

    int add_generator(std::string name, int degree) {
        gens_.push_back({std::move(name), degree});
        return static_cast<int>(gens_.size() - 1);
    }

    void add_rule(std::string gen, int exponent, std::string replacement_expr) {
        pending_.push_back({std::move(gen), exponent, std::move(replacement_expr)});
    }

    void add_rule(std::string gen, int exponent, std::vector<Term<F>> replacement_raw) {
        pending_.push_back({std::move(gen), exponent, std::move(replacement_raw)});
    }

    PresPtr<F> build() const {
        if (trunc_ < 0) fail(ErrorKind::ValidationError, "negative truncation degree");
        for (size_t i = 0; i < gens_.size(); ++i) {
            const auto& g = gens_[i];
            if (g.degree <= 0)
                fail(ErrorKind::ValidationError, "generator '" + g.name +
                                                     "' must have positive degree");
            // Products carry no Koszul signs, which is only sound in odd
            // degrees over GF(2).
            if constexpr (std::is_same_v<F, Rational>) {
                if (g.degree % 2 != 0)
                    fail(ErrorKind::ValidationError,
                         "generator '" + g.name +
                             "' has odd degree; rational coefficients need even degrees");
            }
            if (!valid_name(g.name))
                fail(ErrorKind::ValidationError, "generator name '" + g.name +
                                                     "' is not an identifier");
            for (size_t j = i + 1; j < gens_.size(); ++j)
                if (gens_[j].name == g.name)
                    fail(ErrorKind::ValidationError, "duplicate generator '" + g.name + "'");
        }

        // Bare ring (no rules) to evaluate replacement expressions against.
        auto bare = std::make_shared<Presentation<F>>(
            gens_, std::vector<std::optional<Rule<F>>>(gens_.size()), trunc_);

        std::vector<std::optional<Rule<F>>> rules(gens_.size());
        for (const auto& pr : pending_) {
            int g = bare->find(pr.gen);
            if (g < 0)
                fail(ErrorKind::UnknownGenerator, "rule on unknown generator '" + pr.gen + "'");
            if (pr.exponent < 1)
                fail(ErrorKind::ValidationError, "rule exponent must be at least 1");
            if (rules[g])
                fail(ErrorKind::ValidationError,
                     "generator '" + pr.gen + "' already has a rule");
            Element<F> repl =
                std::holds_alternative<std::string>(pr.replacement)
                    ? parse_expression(PresPtr<F>(bare), std::get<std::string>(pr.replacement))
                    : normal_form(PresPtr<F>(bare),
                                  std::get<std::vector<Term<F>>>(pr.replacement));
            Monomial lhs(gens_.size(), 0);
            lhs[g] = pr.exponent;
            int lhs_deg = pr.exponent * gens_[g].degree;
            for (const auto& t : repl.terms()) {
                if (bare->degree(t.mono) != lhs_deg)
                    fail(ErrorKind::ValidationError,
                         "rule on '" + pr.gen + "' is not degree-homogeneous");
                if (!bare->mono_less(t.mono, lhs))
                    fail(ErrorKind::ValidationError,
                         "rule on '" + pr.gen + "' is not decreasing in the monomial order");
            }
            rules[g] = Rule<F>{pr.exponent, repl.terms()};
        }

        auto built = std::make_shared<Presentation<F>>(gens_, std::move(rules), trunc_);
        // Re-normalize each replacement against the full rule set. Rewriting
        // only ever produces smaller monomials, so decreasingness survives.
        for (size_t g = 0; g < built->n_gens(); ++g) {
            if (!built->rules_[g]) continue;
            auto nf = normal_form(PresPtr<F>(built), built->rules_[g]->replacement);
            built->rules_[g]->replacement = nf.terms();
        }
        return built;
    }

private:
    struct PendingRule {
        std::string gen;
        int exponent;
        std::variant<std::string, std::vector<Term<F>>> replacement;
    };

    static bool valid_name(const std::string& s) {
        if (s.empty() || (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_'))
            return false;
        for (char c : s)
            if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
        return true;
    }

    int trunc_;
    std::vector<Generator> gens_;
    std::vector<PendingRule> pending_;
};

// ---------------------------------------------------------------------------
// Expression grammar shared by the CLI and spec files:
//   expr   := ['-'] term (('+' | '-') term)*
//   term   := factor (('*' | '/') factor)*
//   factor := atom ('^' integer)?
//   atom   := integer | generator | '(' expr ')'
// '/' divides by a nonzero constant, so fractions like 7/45 * p2 round-trip.
// Whitespace is insignificant. Column numbers are 1-based in diagnostics.

namespace detail {

template <class F>
class ExprParser {
public:
    ExprParser(PresPtr<F> pres, std::string_view text) : pres_(std::move(pres)), text_(text) {}

    Element<F> parse() {
        Element<F> e = expr();
        skip_ws();
        if (pos_ != text_.size()) err("unexpected character");
        return e;
    }

private:
    Element<F> expr() {
        skip_ws();
        bool neg = false;
        if (peek() == '-' || peek() == '+') neg = (text_[pos_++] == '-');
        Element<F> acc = term();
        if (neg) acc = scale(acc, -F::one());
        while (true) {
            skip_ws();
            char c = peek();
            if (c == '+' || c == '-') {
                ++pos_;
                Element<F> t = term();
                acc = (c == '+') ? add(acc, t) : sub(acc, t);
            } else {
                return acc;
            }
        }
    }

    Element<F> term() {
        Element<F> acc = factor();
        while (true) {
            skip_ws();
            if (peek() == '*') {
                ++pos_;
                acc = mul(acc, factor());
            } else if (peek() == '/') {
                ++pos_;
                skip_ws();
                size_t col = pos_ + 1;
                Element<F> d = factor();
                if (d.terms().size() != 1 || pres_->degree(d.terms()[0].mono) != 0)
                    err_at(col, "division needs a nonzero constant");
                acc = scale(acc, d.terms()[0].coef.inverse());
            } else {
                return acc;
            }
        }
    }

    Element<F> factor() {
        Element<F> base = atom();
        skip_ws();
        if (peek() == '^') {
            ++pos_;
            skip_ws();
            size_t col = pos_ + 1;
            long long e = integer();
            if (e < 0) err_at(col, "exponent must be nonnegative");
            base = pow_elem(base, static_cast<int>(e));
        }
        return base;
    }

    Element<F> atom() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            ++pos_;
            Element<F> e = expr();
            skip_ws();
            if (peek() != ')') err("expected ')'");
            ++pos_;
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)))
            return scale(unit(pres_), F::from_int(integer()));
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t col = pos_ + 1;
            size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            std::string name(text_.substr(start, pos_ - start));
            if (pres_->find(name) < 0)
                fail(ErrorKind::UnknownGenerator,
                     "unknown generator '" + name + "' at column " + std::to_string(col));
            return gen_elem(pres_, name);
        }
        err(c == '\0' ? "unexpected end of expression" : "unexpected character");
    }

    long long integer() {
        skip_ws();
        if (!std::isdigit(static_cast<unsigned char>(peek()))) err("expected an integer");
        long long v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            v = v * 10 + (text_[pos_] - '0');
            if (v > (1LL << 40)) err("integer literal too large");
            ++pos_;
        }
        return v;
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    [[noreturn]] void err(const std::string& what) { err_at(pos_ + 1, what); }
    [[noreturn]] void err_at(size_t col, const std::string& what) {
        fail(ErrorKind::ParseError, what + " at column " + std::to_string(col));
    }

    PresPtr<F> pres_;
    std::string_view text_;
    size_t pos_ = 0;
};

} // namespace detail

template <class F>
Element<F> parse_expression(const PresPtr<F>& pres, std::string_view text) {
    return detail::ExprParser<F>(pres, text).parse();
}

/// Parses an expression that must reduce to a single monomial with unit
/// coefficient (used for `top`, gysin keys and similar spots).
template <class F>
Monomial parse_monomial(const PresPtr<F>& pres, std::string_view text) {
    Element<F> e = parse_expression(pres, text);
    if (e.terms().size() != 1 || !(e.terms()[0].coef == F::one()))
        fail(ErrorKind::ParseError, "expected a single monomial: '" + std::string(text) + "'");
    return e.terms()[0].mono;
}

// ---------------------------------------------------------------------------
// Printing. Deterministic: terms ascend in the monomial order.

template <class F>
std::string mono_str(const Presentation<F>& pres, const Monomial& m) {
    std::string out;
    for (size_t g = 0; g < m.size(); ++g) {
        if (m[g] == 0) continue;
        if (!out.empty()) out += "*";
        out += pres.gens()[g].name;
        if (m[g] > 1) out += "^" + std::to_string(m[g]);
    }
    return out.empty() ? "1" : out;
}

inline std::string coef_str(GF2) { return "1"; }
inline std::string coef_str(const Rational& c) { return c.str(); }
inline bool coef_is_negative(GF2) { return false; }
inline bool coef_is_negative(const Rational& c) { return c.num < 0; }
inline GF2 coef_abs(GF2 c) { return c; }
inline Rational coef_abs(const Rational& c) { return c.num < 0 ? -c : c; }

template <class F>
std::string term_str(const Presentation<F>& pres, const Monomial& m, const F& c) {
    std::string ms = mono_str(pres, m);
    if (ms == "1") return coef_str(c);
    if (c.is_one()) return ms;
    return coef_str(c) + "*" + ms;
}

template <class F>
std::string to_string(const Element<F>& x) {
    if (x.is_zero()) return "0";
    std::string out;
    for (size_t i = 0; i < x.terms().size(); ++i) {
        const auto& t = x.terms()[i];
        if (i == 0) {
            out = coef_is_negative(t.coef)
                      ? "-" + term_str(*x.pres(), t.mono, coef_abs(t.coef))
                      : term_str(*x.pres(), t.mono, t.coef);
        } else {
            out += coef_is_negative(t.coef) ? " - " : " + ";
            out += term_str(*x.pres(), t.mono, coef_abs(t.coef));
        }
    }
    return out;
}

} // namespace wucalc
