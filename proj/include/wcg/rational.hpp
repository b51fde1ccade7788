#pragma once

#include <gmpxx.h>

#include <cmath>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "wcg/errors.hpp"

namespace wcg {

/// Arbitrary-precision rational number. Thin value wrapper around GMP's
/// mpq_class adding the string formats used by the JSON instance files:
/// decimal strings ("1.5", "-0.375") and fraction strings ("4/3").
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}  // NOLINT: implicit by design, mirrors int literals
    Rational(long num, long den) : v_(num, den) {
        if (den == 0) throw InputError("rational with zero denominator");
        v_.canonicalize();
    }
    explicit Rational(mpq_class q) : v_(std::move(q)) { v_.canonicalize(); }

    /// Parses "3", "-1.5", ".25", "4/3". Throws InputError on anything else.
    static Rational parse(std::string_view text);

    /// Exact dyadic value of a finite double.
    static Rational from_double(double d) {
        if (!std::isfinite(d)) throw InputError("cannot convert non-finite double to rational");
        return Rational(mpq_class(d));
    }

    /// Decimal string when the denominator is of the form 2^a*5^b,
    /// otherwise "num/den". parse(str()) round-trips exactly.
    std::string str() const;

    double to_double() const { return v_.get_d(); }
    const mpq_class& raw() const { return v_; }

    Rational numerator() const { return Rational(mpq_class(v_.get_num())); }
    Rational denominator() const { return Rational(mpq_class(v_.get_den())); }
    bool is_integer() const { return v_.get_den() == 1; }

    friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ + b.v_)); }
    friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ - b.v_)); }
    friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ * b.v_)); }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.v_ == 0) throw InputError("rational division by zero");
        return Rational(mpq_class(a.v_ / b.v_));
    }
    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    friend Rational abs(const Rational& a) { return Rational(mpq_class(::abs(a.v_))); }

private:
    mpq_class v_;
};

inline Rational Rational::parse(std::string_view text) {
    if (text.empty()) throw InputError("empty rational literal");
    const std::string s(text);
    auto bad = [&] { return InputError("invalid rational literal: '" + s + "'"); };

    if (auto slash = s.find('/'); slash != std::string::npos) {
        const std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        if (num.empty() || den.empty()) throw bad();
        mpz_class n, d;
        if (n.set_str(num, 10) != 0 || d.set_str(den, 10) != 0) throw bad();
        if (d == 0) throw InputError("rational with zero denominator: '" + s + "'");
        return Rational(mpq_class(n, d));
    }

    std::size_t i = 0;
    bool negative = false;
    if (s[i] == '+' || s[i] == '-') negative = s[i++] == '-';
    std::string digits;
    std::size_t frac_digits = 0;
    bool seen_dot = false, seen_digit = false;
    for (; i < s.size(); ++i) {
        if (s[i] == '.') {
            if (seen_dot) throw bad();
            seen_dot = true;
        } else if (s[i] >= '0' && s[i] <= '9') {
            digits.push_back(s[i]);
            seen_digit = true;
            if (seen_dot) ++frac_digits;
        } else {
            throw bad();
        }
    }
    if (!seen_digit) throw bad();
    mpz_class n(digits, 10), d(1);
    for (std::size_t k = 0; k < frac_digits; ++k) d *= 10;
    if (negative) n = -n;
    return Rational(mpq_class(n, d));
}

inline std::string Rational::str() const {
    mpz_class num = v_.get_num(), den = v_.get_den();
    // Count the factors of 2 and 5; only those admit a finite decimal.
    mpz_class rest = den;
    unsigned twos = 0, fives = 0;
    while (rest % 2 == 0) { rest /= 2; ++twos; }
    while (rest % 5 == 0) { rest /= 5; ++fives; }
    if (rest != 1) return num.get_str() + "/" + den.get_str();
    if (den == 1) return num.get_str();

    // num * 10^k / den is an exact integer for k = max(twos, fives).
    const unsigned k = std::max(twos, fives);
    mpz_class pow10(1);
    for (unsigned j = 0; j < k; ++j) pow10 *= 10;
    mpz_class scaled = num * pow10 / den;

    const bool neg = scaled < 0;
    std::string body = mpz_class(::abs(scaled)).get_str();
    if (body.size() <= k) body.insert(0, k + 1 - body.size(), '0');
    body.insert(body.size() - k, ".");
    while (body.back() == '0') body.pop_back();
    if (body.back() == '.') body.pop_back();
    return neg ? "-" + body : body;
}

}  // namespace wcg
