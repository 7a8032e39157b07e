#pragma once

#include <random>
#include <vector>

#include <wucalc/gring.hpp>

// Shared test utilities: seeded random elements and a binomial-parity oracle
// that is independent of the library (digit test, no arithmetic reuse).

namespace testutil {

using namespace wucalc;

/// C(n, k) mod 2 by Lucas: odd exactly when k's binary digits sit inside n's.
inline bool binom_odd(int n, int k) {
    if (k < 0 || k > n) return false;
    return (n & k) == k;
}

template <class F>
F random_coef(std::mt19937& rng);

template <>
inline GF2 random_coef<GF2>(std::mt19937& rng) {
    return GF2::from_int(static_cast<int>(rng() & 1u) | 1);
}

template <>
inline Rational random_coef<Rational>(std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-6, 6);
    std::uniform_int_distribution<int> den(1, 4);
    int n = num(rng);
    if (n == 0) n = 1;
    return Rational(n, den(rng));
}

/// Random element supported on the staircase basis of one random degree.
template <class F>
Element<F> random_homogeneous(const PresPtr<F>& pres, std::mt19937& rng, int max_degree = -1) {
    if (max_degree < 0) max_degree = pres->truncation();
    std::uniform_int_distribution<int> pick_deg(0, max_degree);
    for (int attempt = 0; attempt < 50; ++attempt) {
        int k = pick_deg(rng);
        auto basis = pres->basis_of_degree(k);
        if (basis.empty()) continue;
        std::vector<Term<F>> terms;
        for (const auto& m : basis)
            if (rng() & 1u) terms.push_back({m, random_coef<F>(rng)});
        if (terms.empty()) terms.push_back({basis[0], random_coef<F>(rng)});
        return normal_form(pres, terms);
    }
    return unit(pres);
}

/// Random element mixing several degrees.
template <class F>
Element<F> random_element(const PresPtr<F>& pres, std::mt19937& rng, int parts = 3) {
    Element<F> acc = zero_elem(pres);
    for (int i = 0; i < parts; ++i) acc = add(acc, random_homogeneous(pres, rng));
    return acc;
}

} // namespace testutil
