#pragma once

#include <cmath>
#include <span>
#include <utility>
#include <vector>

#include "wcg/game.hpp"
#include "wcg/goodness.hpp"

namespace wcg {

// ---------------------------------------------------------------------------
// Composition of per-family goodness parameters into game-level (alpha, beta)
// guarantees, the parametric trade-off curves, and the gadget decomposition
// that reduces conical costs to single-term resources.
// ---------------------------------------------------------------------------

/// (alpha, beta) for a game whose costs are conical combinations of functions
/// with the given parameters: alpha = max a2/a1, beta = max(b2/a1) / min(b1/a1).
template <Scalar S>
std::pair<S, S> compose_bounds(std::span<const GoodnessParamsT<S>> list) {
    if (list.empty()) throw InputError("compose_bounds: empty parameter list");
    S alpha = list.front().alpha2 / list.front().alpha1;
    S beta_hi = list.front().beta2 / list.front().alpha1;
    S beta_lo = list.front().beta1 / list.front().alpha1;
    for (std::size_t j = 1; j < list.size(); ++j) {
        const auto& p = list[j];
        const S a = p.alpha2 / p.alpha1;
        const S hi = p.beta2 / p.alpha1;
        const S lo = p.beta1 / p.alpha1;
        if (alpha < a) alpha = a;
        if (beta_hi < hi) beta_hi = hi;
        if (lo < beta_lo) beta_lo = lo;
    }
    return {alpha, beta_hi / beta_lo};
}

template <Scalar S>
std::pair<S, S> compose_bounds(const std::vector<GoodnessParamsT<S>>& list) {
    return compose_bounds(std::span<const GoodnessParamsT<S>>(list));
}

/// Replaces every additive cost (polynomial, conical combination) by one
/// resource per term; strategies pick up all replacements of a resource.
/// Strategically equivalent: every profile keeps all player costs.
Game gadget_decompose(const Game& g);

// ---- canonical per-family parameter assignments -----------------------------

/// Polynomial games of degree d at trade-off lambda in [d, d+1]: degrees
/// k < d keep mu = 1/(k+1); the top degree takes mu = 1/lambda.
template <Scalar S>
std::vector<GoodnessParamsT<S>> poly_family_params(int d, const S& lambda) {
    if (d < 1) throw InputError("polynomial family needs degree >= 1");
    std::vector<GoodnessParamsT<S>> list;
    list.reserve(d + 1);
    list.push_back(constant_goodness<S>());
    for (int k = 1; k < d; ++k)
        list.push_back(monomial_goodness<S>(k, ScalarOps<S>::from_int(1) / ScalarOps<S>::from_int(k + 1)));
    list.push_back(monomial_goodness<S>(d, ScalarOps<S>::from_int(1) / lambda));
    return list;
}

namespace detail {

template <Scalar S>
void expect_equal(const S& got, const S& want, const char* what) {
    if constexpr (ScalarOps<S>::exact) {
        if (!(got == want)) throw std::logic_error(std::string(what) + ": composition mismatch");
    } else {
        if (std::abs(ScalarOps<S>::to_double(got) - ScalarOps<S>::to_double(want)) > 1e-12)
            throw std::logic_error(std::string(what) + ": composition mismatch");
    }
}

}  // namespace detail

// ---- trade-off curves --------------------------------------------------------

/// Polynomials of degree <= d: (lambda, (d+1)/lambda) for lambda in [d, d+1].
template <Scalar S>
std::pair<S, S> poly_curve(int d, const S& lambda) {
    if (d < 1) throw InputError("poly_curve needs d >= 1");
    const S lo = ScalarOps<S>::from_int(d), hi = ScalarOps<S>::from_int(d + 1);
    if (lambda < lo || lambda > hi) throw InputError("poly_curve needs lambda in [d, d+1]");
    const std::pair<S, S> out{lambda, hi / lambda};
    const auto composed = compose_bounds<S>(poly_family_params<S>(d, lambda));
    detail::expect_equal(composed.first, out.first, "poly_curve alpha");
    detail::expect_equal(composed.second, out.second, "poly_curve beta");
    return out;
}

/// Nondecreasing concave costs: (lambda, lambda/(lambda-1)) for
/// lambda in [3/2, 2].
template <Scalar S>
std::pair<S, S> concave_curve(const S& lambda) {
    const S one = ScalarOps<S>::from_int(1);
    const S two = ScalarOps<S>::from_int(2);
    const S lo = ScalarOps<S>::from_int(3) / two;
    if (lambda < lo || lambda > two) throw InputError("concave_curve needs lambda in [3/2, 2]");
    const S mu = one / (two * (lambda - one));
    const std::pair<S, S> out{lambda, lambda / (lambda - one)};
    const std::vector<GoodnessParamsT<S>> list{concave_goodness<S>(mu)};
    const auto composed = compose_bounds<S>(list);
    detail::expect_equal(composed.first, out.first, "concave_curve alpha");
    detail::expect_equal(composed.second, out.second, "concave_curve beta");
    return out;
}

/// Conical mixtures of concave costs and polynomials of degree d >= 2:
/// (lambda, 1 + (d+1)/lambda) for lambda in [d, d+1]. Degree-1 mixtures are
/// already concave; use concave_curve for those.
template <Scalar S>
std::pair<S, S> mixed_curve(int d, const S& lambda) {
    if (d < 2)
        throw InputError("mixed_curve needs d >= 2; degree-1 mixtures are concave, "
                         "use concave_curve");
    const S lo = ScalarOps<S>::from_int(d), hi = ScalarOps<S>::from_int(d + 1);
    if (lambda < lo || lambda > hi) throw InputError("mixed_curve needs lambda in [d, d+1]");
    const S one = ScalarOps<S>::from_int(1);
    const std::pair<S, S> out{lambda, one + hi / lambda};
    auto list = poly_family_params<S>(d, lambda);
    const S mu = hi / (ScalarOps<S>::from_int(2) * lambda);
    list.push_back(concave_goodness<S>(mu));
    const auto composed = compose_bounds<S>(list);
    detail::expect_equal(composed.first, out.first, "mixed_curve alpha");
    detail::expect_equal(composed.second, out.second, "mixed_curve beta");
    return out;
}

/// Fair cost sharing with plateau lambda >= 1 and w_min = 1:
/// alpha = max((1+1/w_max)ln(1+w_max), ln(w_max)+lambda), beta = 1 + ln(W)/lambda.
std::pair<double, double> fairshare_curve(double lambda, double w_max, double W);

/// Existence threshold of the earlier fair cost sharing bound:
/// alpha >= log2[e(1+w_max)].
double chen_roughgarden_alpha_threshold(double w_max);

/// The earlier trade-off pair (f, 1 + 2 log2(1+W)/f), valid for
/// f >= 2 log2[e(1+w_max)]. Used for comparison plots.
std::pair<double, double> chen_roughgarden_reference(double w_max, double W, double f);

// ---- curve objects for reporting ---------------------------------------------

enum class CostFamily { Poly, Concave, Mixed, FairShare };

std::string cost_family_name(CostFamily f);
CostFamily cost_family_from_name(const std::string& name);

struct BoundCurve {
    CostFamily family = CostFamily::Poly;
    int degree = 1;              // poly/mixed
    double w_max = 1, total = 1; // fair-share
    double lambda_lo = 1, lambda_hi = 2;

    std::pair<double, double> at(double lambda) const;
};

BoundCurve make_bound_curve(CostFamily family, int degree = 2, double w_max = 1, double total = 1);

}  // namespace wcg
