#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wcg/cost.hpp"
#include "wcg/errors.hpp"
#include "wcg/scalar.hpp"

namespace wcg {

// ---------------------------------------------------------------------------
// Goodness of a cost function: the two integral-average sandwich conditions
// that drive the potential bounds, as fit/check tools on grids plus the
// closed-form parameters of the catalog families.
// ---------------------------------------------------------------------------

template <Scalar S>
struct GoodnessParamsT {
    S alpha1, alpha2, beta1, beta2;
    S xi;

    GoodnessParamsT(S a1, S a2, S b1, S b2, S xi_)
        : alpha1(std::move(a1)), alpha2(std::move(a2)), beta1(std::move(b1)),
          beta2(std::move(b2)), xi(std::move(xi_)) {
        const S zero = ScalarOps<S>::from_int(0);
        if (!(alpha1 > zero && beta1 > zero)) throw InputError("goodness parameters must be > 0");
        if (alpha2 < alpha1) throw InputError("goodness needs alpha1 <= alpha2");
        if (beta2 < beta1) throw InputError("goodness needs beta1 <= beta2");
        if (xi < zero) throw InputError("goodness slack xi must be >= 0");
    }
};

using GoodnessParams = GoodnessParamsT<double>;

/// Weight statistics of a game: the interval the conditions quantify over.
struct WeightDomain {
    double w_min, w_max, total;  // 0 < w_min <= w_max <= total

    WeightDomain(double w_min_, double w_max_, double total_)
        : w_min(w_min_), w_max(w_max_), total(total_) {
        if (!(w_min > 0 && w_min <= w_max && w_max <= total))
            throw InputError("weight domain needs 0 < w_min <= w_max <= W");
    }
};

enum class GoodnessCondition { AverageLower, AverageUpper, PrefixLower, PrefixUpper };

std::string goodness_condition_name(GoodnessCondition c);

struct GoodnessReport {
    bool satisfied = true;
    double worst_violation = 0.0;  // signed; > tolerance means violated
    GoodnessCondition condition = GoodnessCondition::AverageLower;
    double witness_x = 0.0;
    std::optional<double> witness_w;  // present for the deviation-average condition
    // Grid metadata: verification is a grid scan, not a proof.
    std::size_t x_points = 0, w_points = 0;
    bool used_increasing_shortcut = false;
    double tolerance = 0.0;
    WeightDomain domain{1, 1, 1};
};

struct GoodnessFit {
    GoodnessParams params;
    std::size_t excluded_points = 0;  // grid points skipped on zero denominators
    std::size_t x_points = 0, w_points = 0;
};

/// Verifies the two conditions for the given parameters on a geometric grid
/// over the domain. Pairs with x + w > W are skipped: larger loads are not
/// reachable in any game with total weight W.
GoodnessReport check_goodness(const CostSpec& cost, const GoodnessParams& params,
                              const WeightDomain& domain, int grid_density = 512,
                              bool increasing_shortcut = false, double tolerance = 1e-9);

/// Tightest parameters making both conditions hold on the grid, for a fixed
/// slack xi.
GoodnessFit fit_goodness(const CostSpec& cost, double xi, const WeightDomain& domain,
                         int grid_density = 512);

enum class FitObjective { AlphaRatio, BetaRatio };

struct XiScanResult {
    double xi = 0.0;
    GoodnessFit fit;
    double objective_value = 0.0;
};

/// Fits parameters for every xi in the grid and returns the one minimizing
/// the chosen composed ratio (ties keep the earliest grid entry).
XiScanResult scan_xi(const CostSpec& cost, const WeightDomain& domain,
                     std::span<const double> xi_grid,
                     FitObjective objective = FitObjective::AlphaRatio, int grid_density = 512);

// ---- closed-form parameters of the catalog families ------------------------

/// Degree-d monomials: (mu, 1, 1/(d+1), mu) with xi = mu - 1/(d+1), valid for
/// mu in [1/(d+1), 1/d].
template <Scalar S>
GoodnessParamsT<S> monomial_goodness(int d, const S& mu) {
    if (d < 1) throw InputError("monomial goodness needs degree >= 1");
    const S lo = ScalarOps<S>::from_int(1) / ScalarOps<S>::from_int(d + 1);
    const S hi = ScalarOps<S>::from_int(1) / ScalarOps<S>::from_int(d);
    if constexpr (ScalarOps<S>::exact) {
        if (mu < lo || mu > hi) throw InputError("monomial goodness needs mu in [1/(d+1), 1/d]");
    } else {
        if (mu < lo - 1e-12 || mu > hi + 1e-12)
            throw InputError("monomial goodness needs mu in [1/(d+1), 1/d]");
    }
    return {mu, ScalarOps<S>::from_int(1), lo, mu, mu - lo};
}

/// Constant functions: (1, 1, 1, 1) with xi = 0.
template <Scalar S>
GoodnessParamsT<S> constant_goodness() {
    const S one = ScalarOps<S>::from_int(1);
    return {one, one, one, one, ScalarOps<S>::from_int(0)};
}

/// Nondecreasing concave functions: (mu, mu + 1/2, 1/2, mu + 1/2) with
/// xi = mu - 1/2, valid for mu in [1/2, 1].
template <Scalar S>
GoodnessParamsT<S> concave_goodness(const S& mu) {
    const S half = ScalarOps<S>::from_int(1) / ScalarOps<S>::from_int(2);
    const S one = ScalarOps<S>::from_int(1);
    if constexpr (ScalarOps<S>::exact) {
        if (mu < half || mu > one) throw InputError("concave goodness needs mu in [1/2, 1]");
    } else {
        if (mu < half - 1e-12 || mu > one + 1e-12)
            throw InputError("concave goodness needs mu in [1/2, 1]");
    }
    return {mu, mu + half, half, mu + half, mu - half};
}

/// Fair-share costs with plateau cap on [0,1) and w_min = 1:
/// (1, max((1+1/w_max)ln(1+w_max), ln(w_max)+cap), cap, ln(W)+cap), xi = 0.
GoodnessParams fairshare_goodness(double lambda_cap, double w_max, double W);

/// The deviation-average ratio of the unit fair-share cost:
/// (1 + x/w) ln(1 + w/x) for x >= 1 and ln(w) + cap at x = 0.
double fairshare_ratio(double w, double x, double lambda_cap = 1.0);

// ---- grid helpers (shared with tests) ---------------------------------------

/// Geometric grid over [lo, hi] with n points, each rounded to 26 mantissa
/// bits so that sums and small products of grid values stay exact in double.
std::vector<double> geometric_grid(double lo, double hi, int n);

double round_to_bits(double x, int bits);

}  // namespace wcg
