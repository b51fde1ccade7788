#pragma once

#include <cmath>
#include <limits>
#include <type_traits>

#include "wcg/rational.hpp"

namespace wcg {

/// Backend traits for the two arithmetic modes: exact rationals for
/// polynomial-type games, IEEE doubles with tolerances elsewhere.
template <class S>
struct ScalarOps;

template <>
struct ScalarOps<double> {
    static constexpr bool exact = false;
    static double from_rational(const Rational& r) { return r.to_double(); }
    static double from_int(long n) { return static_cast<double>(n); }
    static double to_double(double x) { return x; }
    static double default_tolerance() { return 1e-9; }
};

template <>
struct ScalarOps<Rational> {
    static constexpr bool exact = true;
    static Rational from_rational(const Rational& r) { return r; }
    static Rational from_int(long n) { return Rational(n); }
    static double to_double(const Rational& r) { return r.to_double(); }
    static Rational default_tolerance() { return Rational(0); }
};

template <class S>
concept Scalar = requires { ScalarOps<S>::exact; };

template <Scalar S>
S pow_int(const S& base, int e) {
    if (e < 0) throw InputError("pow_int: negative exponent");
    S r = ScalarOps<S>::from_int(1);
    S b = base;
    for (int k = e; k > 0; k >>= 1) {
        if (k & 1) r = r * b;
        if (k > 1) b = b * b;
    }
    return r;
}

/// A nonnegative quantity that may be +infinity (cost ratios whose
/// denominator vanished). Keeps rational-mode comparisons exact.
template <Scalar S>
struct Extended {
    S value{};
    bool infinite = false;

    static Extended inf() { return {ScalarOps<S>::from_int(0), true}; }
    static Extended finite(S v) { return {std::move(v), false}; }

    bool leq(const S& bound) const { return !infinite && value <= bound; }
    bool leq(const Extended& o) const { return o.infinite || (!infinite && value <= o.value); }
    double to_double() const {
        return infinite ? std::numeric_limits<double>::infinity() : ScalarOps<S>::to_double(value);
    }
    friend bool operator<(const Extended& a, const Extended& b) {
        if (b.infinite) return !a.infinite;
        if (a.infinite) return false;
        return a.value < b.value;
    }
};

template <Scalar S>
Extended<S> max(const Extended<S>& a, const Extended<S>& b) {
    return a < b ? b : a;
}

}  // namespace wcg
