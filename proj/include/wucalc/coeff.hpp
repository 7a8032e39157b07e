#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "wucalc/error.hpp"

// Coefficient fields for graded rings: GF2 and exact rationals.
// Both satisfy the same small interface (zero/one/from_int, +,-,*, inverse,
// is_zero, str) so the ring machinery can be written once.

namespace wucalc {

struct GF2 {
    uint8_t v = 0;

    static GF2 zero() { return {0}; }
    static GF2 one() { return {1}; }
    static GF2 from_int(long long n) { return {static_cast<uint8_t>(n & 1)}; }

    bool is_zero() const { return v == 0; }
    bool is_one() const { return v == 1; }
    GF2 inverse() const {
        if (v == 0) fail(ErrorKind::NotAUnit, "division by zero in GF(2)");
        return {1};
    }
    std::string str() const { return v ? "1" : "0"; }

    friend GF2 operator+(GF2 a, GF2 b) { return {static_cast<uint8_t>(a.v ^ b.v)}; }
    friend GF2 operator-(GF2 a, GF2 b) { return a + b; }
    friend GF2 operator*(GF2 a, GF2 b) { return {static_cast<uint8_t>(a.v & b.v)}; }
    GF2 operator-() const { return *this; }
    friend bool operator==(GF2 a, GF2 b) { return a.v == b.v; }
    friend bool operator!=(GF2 a, GF2 b) { return a.v != b.v; }
};

/// Exact rational on int64. Always normalized: den > 0, gcd(num, den) = 1.
/// Intermediates go through __int128; anything that would not fit back into
/// int64 after reduction throws rather than wrapping.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n) : num(n), den(1) {}
    Rational(long long n, long long d) : num(n), den(d) { normalize(); }

    static Rational zero() { return {}; }
    static Rational one() { return {1}; }
    static Rational from_int(long long n) { return {n}; }

    bool is_zero() const { return num == 0; }
    bool is_one() const { return num == 1 && den == 1; }

    Rational inverse() const {
        if (num == 0) fail(ErrorKind::NotAUnit, "division by zero");
        Rational r;
        r.num = num < 0 ? -den : den;
        r.den = num < 0 ? -num : num;
        return r;
    }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return make(i128(a.num) * b.den + i128(b.num) * a.den, i128(a.den) * b.den);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return make(i128(a.num) * b.den - i128(b.num) * a.den, i128(a.den) * b.den);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return make(i128(a.num) * b.num, i128(a.den) * b.den);
    }
    friend Rational operator/(const Rational& a, const Rational& b) { return a * b.inverse(); }
    Rational operator-() const {
        Rational r = *this;
        r.num = -r.num;
        return r;
    }
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }

private:
    using i128 = __int128;

    static Rational make(i128 n, i128 d) {
        if (d == 0) fail(ErrorKind::NotAUnit, "zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        i128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        constexpr i128 lo = INT64_MIN, hi = INT64_MAX;
        if (n < lo || n > hi || d > hi)
            throw std::overflow_error("rational coefficient overflow");
        Rational r;
        r.num = static_cast<long long>(n);
        r.den = static_cast<long long>(d);
        return r;
    }

    static i128 gcd128(i128 a, i128 b) {
        while (b != 0) {
            i128 t = a % b;
            a = b;
            b = t;
        }
        return a == 0 ? 1 : a;
    }

    void normalize() { *this = make(num, den); }
};

} // namespace wucalc
