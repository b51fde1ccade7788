#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "wcg/errors.hpp"
#include "wcg/scalar.hpp"

namespace wcg {

// ---------------------------------------------------------------------------
// Cost-function catalog. Each resource of a game carries one CostSpec; the
// catalog is closed-form only so evaluation and integration stay exact where
// the arithmetic backend allows it.
// ---------------------------------------------------------------------------

enum class ConcaveForm { Sqrt, Log1p, Affine };

struct ConstantCost {
    Rational value;  // c(x) = value, value >= 0
};

struct MonomialCost {
    int degree;      // >= 1
    Rational coeff;  // >= 0; c(x) = coeff * x^degree
};

struct PolynomialCost {
    std::vector<Rational> coeffs;  // a_0..a_d, all >= 0; c(x) = sum a_j x^j
};

/// Concave nondecreasing piecewise-linear function given by its breakpoints.
/// First breakpoint must sit at x = 0; beyond the last one the final slope
/// continues.
struct PiecewiseLinearCost {
    std::vector<std::pair<Rational, Rational>> points;  // (x, value)
};

/// scale * f(x) + offset with f one of sqrt(x), ln(1+x), x. All concave and
/// nondecreasing for scale, offset >= 0.
struct AnalyticConcaveCost {
    ConcaveForm form;
    Rational scale;
    Rational offset;
};

/// Cost-sharing resource: a fixed cost split by load, extended below the
/// minimum weight by a constant plateau. c(x) = cap*share on [0,1) and
/// share/x on [1,inf).
struct FairShareCost {
    Rational share;  // > 0
    Rational cap;    // >= 1, plateau multiplier
};

class CostSpec;
struct ConicalTerm;

/// Nonnegative-weighted sum of catalog members.
struct ConicalCost {
    std::vector<ConicalTerm> terms;
};

enum class CostKind { Constant, Monomial, Polynomial, PiecewiseLinear, AnalyticConcave, FairShare, Conical };

class CostSpec {
public:
    using Variant = std::variant<ConstantCost, MonomialCost, PolynomialCost, PiecewiseLinearCost,
                                 AnalyticConcaveCost, FairShareCost, ConicalCost>;

    explicit CostSpec(Variant v);

    CostKind kind() const { return static_cast<CostKind>(v_.index()); }
    const Variant& variant() const { return v_; }

    template <class T>
    const T& as() const { return std::get<T>(v_); }
    template <class T>
    bool is() const { return std::holds_alternative<T>(v_); }

private:
    Variant v_;
};

struct ConicalTerm {
    Rational coeff;  // >= 0
    CostSpec cost;
};

// ---- factories ------------------------------------------------------------

inline CostSpec constant_cost(Rational value) { return CostSpec(ConstantCost{std::move(value)}); }
inline CostSpec monomial_cost(int degree, Rational coeff = 1) {
    return CostSpec(MonomialCost{degree, std::move(coeff)});
}
inline CostSpec polynomial_cost(std::vector<Rational> coeffs) {
    return CostSpec(PolynomialCost{std::move(coeffs)});
}
inline CostSpec piecewise_linear_cost(std::vector<std::pair<Rational, Rational>> points) {
    return CostSpec(PiecewiseLinearCost{std::move(points)});
}
inline CostSpec analytic_concave_cost(ConcaveForm form, Rational scale, Rational offset = 0) {
    return CostSpec(AnalyticConcaveCost{form, std::move(scale), std::move(offset)});
}
inline CostSpec fair_share_cost(Rational share, Rational cap = 1) {
    return CostSpec(FairShareCost{std::move(share), std::move(cap)});
}
inline CostSpec conical_cost(std::vector<ConicalTerm> terms) {
    return CostSpec(ConicalCost{std::move(terms)});
}

// ---- validation -----------------------------------------------------------

namespace detail {
void validate_cost(const CostSpec::Variant& v);
}

inline CostSpec::CostSpec(Variant v) : v_(std::move(v)) { detail::validate_cost(v_); }

// ---- evaluation -----------------------------------------------------------

template <Scalar S>
S evaluate(const CostSpec& cost, const S& x);

namespace detail {

template <Scalar S>
S eval_poly(const std::vector<Rational>& coeffs, const S& x) {
    // Horner.
    S acc = ScalarOps<S>::from_int(0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
        acc = acc * x + ScalarOps<S>::from_rational(*it);
    return acc;
}

template <Scalar S>
S eval_pwl(const PiecewiseLinearCost& c, const S& x) {
    // Find the segment containing x; extend the last slope beyond the end.
    const auto& pts = c.points;
    std::size_t i = 0;
    while (i + 1 < pts.size() && ScalarOps<S>::from_rational(pts[i + 1].first) <= x) ++i;
    if (i + 1 == pts.size()) {
        if (pts.size() == 1) return ScalarOps<S>::from_rational(pts.back().second);
        const auto& a = pts[pts.size() - 2];
        const auto& b = pts.back();
        S slope = ScalarOps<S>::from_rational((b.second - a.second) / (b.first - a.first));
        return ScalarOps<S>::from_rational(b.second) + slope * (x - ScalarOps<S>::from_rational(b.first));
    }
    const auto& a = pts[i];
    const auto& b = pts[i + 1];
    S slope = ScalarOps<S>::from_rational((b.second - a.second) / (b.first - a.first));
    return ScalarOps<S>::from_rational(a.second) + slope * (x - ScalarOps<S>::from_rational(a.first));
}

template <Scalar S>
S eval_analytic(const AnalyticConcaveCost& c, const S& x) {
    const S scale = ScalarOps<S>::from_rational(c.scale);
    const S offset = ScalarOps<S>::from_rational(c.offset);
    if (c.form == ConcaveForm::Affine) return scale * x + offset;
    if constexpr (ScalarOps<S>::exact) {
        throw ExactnessError("sqrt/log1p costs have no exact rational value; use float mode");
    } else {
        double xv = ScalarOps<S>::to_double(x);
        double f = c.form == ConcaveForm::Sqrt ? std::sqrt(xv) : std::log1p(xv);
        return scale * f + offset;
    }
}

}  // namespace detail

template <Scalar S>
S evaluate(const CostSpec& cost, const S& x) {
    if (x < ScalarOps<S>::from_int(0)) throw InputError("cost evaluated at negative load");
    return std::visit(
        [&](const auto& c) -> S {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, ConstantCost>) {
                return ScalarOps<S>::from_rational(c.value);
            } else if constexpr (std::is_same_v<T, MonomialCost>) {
                return ScalarOps<S>::from_rational(c.coeff) * pow_int(x, c.degree);
            } else if constexpr (std::is_same_v<T, PolynomialCost>) {
                return detail::eval_poly<S>(c.coeffs, x);
            } else if constexpr (std::is_same_v<T, PiecewiseLinearCost>) {
                return detail::eval_pwl<S>(c, x);
            } else if constexpr (std::is_same_v<T, AnalyticConcaveCost>) {
                return detail::eval_analytic<S>(c, x);
            } else if constexpr (std::is_same_v<T, FairShareCost>) {
                const S one = ScalarOps<S>::from_int(1);
                if (x < one) return ScalarOps<S>::from_rational(c.cap * c.share);
                return ScalarOps<S>::from_rational(c.share) / x;
            } else {
                S acc = ScalarOps<S>::from_int(0);
                for (const auto& t : c.terms)
                    acc = acc + ScalarOps<S>::from_rational(t.coeff) * evaluate<S>(t.cost, x);
                return acc;
            }
        },
        cost.variant());
}

// ---- integration ----------------------------------------------------------

namespace detail {

// Antiderivative-based closed forms. Everything except FairShare and the
// sqrt/log1p analytic kinds stays inside the rationals.
template <Scalar S>
S integrate_impl(const CostSpec& cost, const S& a, const S& b);

template <Scalar S>
S integrate_pwl(const PiecewiseLinearCost& c, const S& a, const S& b) {
    // Trapezoid areas over segment intersections; exact for any backend.
    auto seg_area = [&](const S& lo, const S& hi) {
        S flo = eval_pwl<S>(c, lo), fhi = eval_pwl<S>(c, hi);
        return (hi - lo) * (flo + fhi) / ScalarOps<S>::from_int(2);
    };
    S total = ScalarOps<S>::from_int(0);
    S cur = a;
    for (std::size_t i = 0; i < c.points.size(); ++i) {
        S bx = ScalarOps<S>::from_rational(c.points[i].first);
        if (bx <= cur) continue;
        if (bx >= b) break;
        total = total + seg_area(cur, bx);
        cur = bx;
    }
    if (cur < b) total = total + seg_area(cur, b);
    return total;
}

template <Scalar S>
S integrate_impl(const CostSpec& cost, const S& a, const S& b) {
    const S zero = ScalarOps<S>::from_int(0);
    return std::visit(
        [&](const auto& c) -> S {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, ConstantCost>) {
                return ScalarOps<S>::from_rational(c.value) * (b - a);
            } else if constexpr (std::is_same_v<T, MonomialCost>) {
                const S dp1 = ScalarOps<S>::from_int(c.degree + 1);
                return ScalarOps<S>::from_rational(c.coeff) *
                       (pow_int(b, c.degree + 1) - pow_int(a, c.degree + 1)) / dp1;
            } else if constexpr (std::is_same_v<T, PolynomialCost>) {
                S acc = zero;
                for (std::size_t j = 0; j < c.coeffs.size(); ++j) {
                    const S jp1 = ScalarOps<S>::from_int(static_cast<long>(j) + 1);
                    acc = acc + ScalarOps<S>::from_rational(c.coeffs[j]) *
                                    (pow_int(b, static_cast<int>(j) + 1) -
                                     pow_int(a, static_cast<int>(j) + 1)) /
                                    jp1;
                }
                return acc;
            } else if constexpr (std::is_same_v<T, PiecewiseLinearCost>) {
                return integrate_pwl<S>(c, a, b);
            } else if constexpr (std::is_same_v<T, AnalyticConcaveCost>) {
                const S scale = ScalarOps<S>::from_rational(c.scale);
                const S offset = ScalarOps<S>::from_rational(c.offset);
                if (c.form == ConcaveForm::Affine)
                    return scale * (b * b - a * a) / ScalarOps<S>::from_int(2) + offset * (b - a);
                if constexpr (ScalarOps<S>::exact) {
                    throw ExactnessError("sqrt/log1p integrals are not rational; use float mode");
                } else {
                    double av = ScalarOps<S>::to_double(a), bv = ScalarOps<S>::to_double(b);
                    double f;
                    if (c.form == ConcaveForm::Sqrt) {
                        f = 2.0 / 3.0 * (std::pow(bv, 1.5) - std::pow(av, 1.5));
                    } else {
                        auto F = [](double t) { return (1.0 + t) * std::log1p(t) - t; };
                        f = F(bv) - F(av);
                    }
                    return scale * f + offset * (bv - av);
                }
            } else if constexpr (std::is_same_v<T, FairShareCost>) {
                if constexpr (ScalarOps<S>::exact) {
                    throw ExactnessError("fair-share integrals involve ln; use float mode");
                } else {
                    double av = ScalarOps<S>::to_double(a), bv = ScalarOps<S>::to_double(b);
                    double share = c.share.to_double(), cap = c.cap.to_double();
                    // Plateau cap*share below 1, share/x above.
                    auto F = [&](double t) {
                        return t <= 1.0 ? cap * share * t : cap * share + share * std::log(t);
                    };
                    return F(bv) - F(av);
                }
            } else {
                S acc = zero;
                for (const auto& t : c.terms)
                    acc = acc + ScalarOps<S>::from_rational(t.coeff) * integrate_impl<S>(t.cost, a, b);
                return acc;
            }
        },
        cost.variant());
}

}  // namespace detail

/// Definite integral of the cost over [a, b], 0 <= a <= b. Closed form for
/// every catalog member; throws ExactnessError in rational mode for the
/// transcendental ones.
template <Scalar S>
S integrate(const CostSpec& cost, const S& a, const S& b) {
    const S zero = ScalarOps<S>::from_int(0);
    if (a < zero || b < a) throw InputError("integrate: need 0 <= a <= b");
    return detail::integrate_impl<S>(cost, a, b);
}

// ---- structure queries (double-based tooling) ------------------------------

/// True when evaluate/integrate have exact rational closed forms.
bool rational_closed(const CostSpec& cost);

/// Interior kinks of the cost in (0, inf): the plateau edge of fair-share
/// costs and piecewise-linear breakpoints. Used by grids and quadrature.
std::vector<double> cost_breakpoints(const CostSpec& cost);

/// (min, max) of the cost over [w_min, x]. Uses per-variant monotonicity
/// where known; grid refinement (1024 points plus breakpoints) otherwise.
std::pair<double, double> range_extrema(const CostSpec& cost, double w_min, double x);

struct MonotonicityReport {
    bool nondecreasing = true;
    // Present iff nondecreasing is false: pair (x, y) with x < y and c(x) > c(y).
    std::optional<std::pair<double, double>> witness;
};

/// Checks c for being nondecreasing on [0, hi].
MonotonicityReport is_nondecreasing(const CostSpec& cost, double hi, double tol = 1e-12);

/// Scales the cost by k >= 0, folding the factor into the representation.
CostSpec scale_cost(const CostSpec& cost, const Rational& k);

/// Splits the cost into additive catalog leaves: polynomials into their
/// monomials, conical combinations into scaled terms (recursively). The
/// returned costs sum pointwise to the original.
std::vector<CostSpec> decompose_cost(const CostSpec& cost);

std::string cost_kind_name(CostKind k);

}  // namespace wcg
