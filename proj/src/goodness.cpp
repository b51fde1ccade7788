#include "wcg/goodness.hpp"

#include <algorithm>
#include <limits>

namespace wcg {

std::string goodness_condition_name(GoodnessCondition c) {
    switch (c) {
        case GoodnessCondition::AverageLower: return "deviation-average lower";
        case GoodnessCondition::AverageUpper: return "deviation-average upper";
        case GoodnessCondition::PrefixLower: return "prefix-average lower";
        case GoodnessCondition::PrefixUpper: return "prefix-average upper";
    }
    return "unknown";
}

double round_to_bits(double x, int bits) {
    if (x == 0.0 || !std::isfinite(x)) return x;
    int e = 0;
    double m = std::frexp(x, &e);  // |m| in [0.5, 1)
    const double scale = std::ldexp(1.0, bits);
    return std::ldexp(std::round(m * scale) / scale, e);
}

std::vector<double> geometric_grid(double lo, double hi, int n) {
    if (!(lo > 0) || hi < lo) throw InputError("geometric_grid: need 0 < lo <= hi");
    if (n < 1) throw InputError("geometric_grid: need at least one point");
    std::vector<double> xs;
    if (lo == hi || n == 1) {
        xs.push_back(round_to_bits(lo, 26));
        return xs;
    }
    const double ratio = std::log(hi / lo);
    xs.reserve(n);
    for (int i = 0; i < n; ++i) {
        double t = lo * std::exp(ratio * i / (n - 1));
        xs.push_back(std::clamp(round_to_bits(t, 26), lo, hi));
    }
    xs.front() = lo;
    xs.back() = hi;
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
}

namespace {

struct GoodnessGrid {
    std::vector<double> xs;  // {0} u [w_min, W] with breakpoints
    std::vector<double> ws;  // [w_min, w_max] with breakpoints
};

GoodnessGrid make_grid(const CostSpec& cost, const WeightDomain& d, int density) {
    if (density < 2) throw InputError("goodness grid density must be >= 2");
    GoodnessGrid g;
    g.xs = geometric_grid(d.w_min, d.total, density);
    g.ws = geometric_grid(d.w_min, d.w_max, density);
    for (double b : cost_breakpoints(cost)) {
        if (b >= d.w_min && b <= d.total) g.xs.push_back(b);
        if (b >= d.w_min && b <= d.w_max) g.ws.push_back(b);
    }
    std::sort(g.xs.begin(), g.xs.end());
    g.xs.erase(std::unique(g.xs.begin(), g.xs.end()), g.xs.end());
    std::sort(g.ws.begin(), g.ws.end());
    g.ws.erase(std::unique(g.ws.begin(), g.ws.end()), g.ws.end());
    g.xs.insert(g.xs.begin(), 0.0);
    return g;
}

}  // namespace

GoodnessReport check_goodness(const CostSpec& cost, const GoodnessParams& params,
                              const WeightDomain& domain, int grid_density,
                              bool increasing_shortcut, double tolerance) {
    const auto grid = make_grid(cost, domain, grid_density);
    GoodnessReport report;
    report.x_points = grid.xs.size();
    report.w_points = grid.ws.size();
    report.tolerance = tolerance;
    report.domain = domain;

    auto record = [&](double violation, GoodnessCondition cond, double x,
                      std::optional<double> w) {
        if (violation > report.worst_violation) {
            report.worst_violation = violation;
            report.condition = cond;
            report.witness_x = x;
            report.witness_w = w;
        }
    };

    for (double w : grid.ws) {
        const double cw = evaluate<double>(cost, w);
        for (double x : grid.xs) {
            if (x + w > domain.total) continue;  // unreachable loads are out of scope
            const double avg = integrate<double>(cost, x, x + w) / w;
            const double target = evaluate<double>(cost, x + w);
            const double shift = params.xi * cw;
            record(params.alpha1 * target - shift - avg, GoodnessCondition::AverageLower, x, w);
            record(avg - (params.alpha2 * target - shift), GoodnessCondition::AverageUpper, x, w);
        }
    }

    report.used_increasing_shortcut =
        increasing_shortcut && is_nondecreasing(cost, domain.total).nondecreasing;
    for (double x : grid.xs) {
        if (x == 0.0) continue;  // the prefix condition quantifies over [w_min, W] only
        const double avg = integrate<double>(cost, 0.0, x) / x;
        const double cx = evaluate<double>(cost, x);
        if (report.used_increasing_shortcut) {
            record(params.beta1 * cx - avg, GoodnessCondition::PrefixLower, x, std::nullopt);
            record(avg - (params.beta2 - params.xi) * cx, GoodnessCondition::PrefixUpper, x,
                   std::nullopt);
        } else {
            const auto [cmin, cmax] = range_extrema(cost, domain.w_min, x);
            record(params.beta1 * cx - params.xi * cmin - avg, GoodnessCondition::PrefixLower, x,
                   std::nullopt);
            record(avg - (params.beta2 * cx - params.xi * cmax), GoodnessCondition::PrefixUpper, x,
                   std::nullopt);
        }
    }

    report.satisfied = report.worst_violation <= tolerance;
    return report;
}

GoodnessFit fit_goodness(const CostSpec& cost, double xi, const WeightDomain& domain,
                         int grid_density) {
    if (xi < 0) throw InputError("fit_goodness: xi must be >= 0");
    // Ratios are invariant under positive scaling; normalize monomials so the
    // float arithmetic works near unit scale.
    const CostSpec* target = &cost;
    std::optional<CostSpec> normalized;
    if (cost.is<MonomialCost>() && cost.as<MonomialCost>().coeff > 0) {
        normalized = monomial_cost(cost.as<MonomialCost>().degree, 1);
        target = &*normalized;
    }
    const auto grid = make_grid(*target, domain, grid_density);

    GoodnessFit fit{GoodnessParams{1, 1, 1, 1, 0}, 0, grid.xs.size(), grid.ws.size()};
    double a_lo = std::numeric_limits<double>::infinity(), a_hi = -a_lo;
    double b_lo = a_lo, b_hi = -a_lo;

    for (double w : grid.ws) {
        const double cw = evaluate<double>(*target, w);
        for (double x : grid.xs) {
            if (x + w > domain.total) continue;
            const double den = evaluate<double>(*target, x + w);
            if (!(den > 0)) {
                ++fit.excluded_points;
                continue;
            }
            const double ratio = (integrate<double>(*target, x, x + w) / w + xi * cw) / den;
            a_lo = std::min(a_lo, ratio);
            a_hi = std::max(a_hi, ratio);
        }
    }
    for (double x : grid.xs) {
        if (x == 0.0) continue;
        const double den = evaluate<double>(*target, x);
        if (!(den > 0)) {
            ++fit.excluded_points;
            continue;
        }
        const double base = integrate<double>(*target, 0.0, x) / x;
        const auto [cmin, cmax] = range_extrema(*target, domain.w_min, x);
        b_lo = std::min(b_lo, (base + xi * cmin) / den);
        b_hi = std::max(b_hi, (base + xi * cmax) / den);
    }

    if (!std::isfinite(a_lo) || !std::isfinite(b_lo))
        throw InputError("fit_goodness: cost vanished on the whole grid");
    fit.params = GoodnessParams{a_lo, a_hi, b_lo, b_hi, xi};
    return fit;
}

XiScanResult scan_xi(const CostSpec& cost, const WeightDomain& domain,
                     std::span<const double> xi_grid, FitObjective objective, int grid_density) {
    if (xi_grid.empty()) throw InputError("scan_xi: xi grid must be nonempty");
    std::optional<XiScanResult> best;
    for (double xi : xi_grid) {
        auto fit = fit_goodness(cost, xi, domain, grid_density);
        const double value = objective == FitObjective::AlphaRatio
                                 ? fit.params.alpha2 / fit.params.alpha1
                                 : fit.params.beta2 / fit.params.beta1;
        if (!best || value < best->objective_value) best = XiScanResult{xi, fit, value};
    }
    return *best;
}

GoodnessParams fairshare_goodness(double lambda_cap, double w_max, double W) {
    if (lambda_cap < 1) throw InputError("fair-share goodness needs cap >= 1");
    if (w_max < 1) throw InputError("fair-share goodness needs w_max >= 1 (rescale to w_min = 1)");
    if (W < w_max) throw InputError("fair-share goodness needs W >= w_max");
    const double alpha2 =
        std::max((1.0 + 1.0 / w_max) * std::log1p(w_max), std::log(w_max) + lambda_cap);
    return GoodnessParams{1.0, alpha2, lambda_cap, std::log(W) + lambda_cap, 0.0};
}

double fairshare_ratio(double w, double x, double lambda_cap) {
    if (w < 1) throw InputError("fairshare_ratio: need w >= 1");
    if (x == 0.0) return std::log(w) + lambda_cap;
    if (x < 1) throw InputError("fairshare_ratio: need x = 0 or x >= 1");
    return (1.0 + x / w) * std::log1p(w / x);
}

}  // namespace wcg
