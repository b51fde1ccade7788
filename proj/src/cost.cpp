#include "wcg/cost.hpp"

#include <algorithm>
#include <cmath>

namespace wcg {

namespace detail {

void validate_cost(const CostSpec::Variant& v) {
    std::visit(
        [](const auto& c) {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, ConstantCost>) {
                if (c.value < 0) throw InputError("constant cost must be >= 0");
            } else if constexpr (std::is_same_v<T, MonomialCost>) {
                if (c.degree < 1) throw InputError("monomial degree must be >= 1");
                if (c.coeff < 0) throw InputError("monomial coefficient must be >= 0");
            } else if constexpr (std::is_same_v<T, PolynomialCost>) {
                if (c.coeffs.empty()) throw InputError("polynomial needs at least one coefficient");
                for (const auto& a : c.coeffs)
                    if (a < 0) throw InputError("polynomial coefficients must be >= 0");
            } else if constexpr (std::is_same_v<T, PiecewiseLinearCost>) {
                const auto& pts = c.points;
                if (pts.empty()) throw InputError("piecewise-linear cost needs breakpoints");
                if (!(pts.front().first == 0))
                    throw InputError("piecewise-linear cost must start at x = 0");
                if (pts.front().second < 0) throw InputError("piecewise-linear values must be >= 0");
                Rational prev_slope(0);
                bool have_prev = false;
                for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
                    if (!(pts[i].first < pts[i + 1].first))
                        throw InputError("piecewise-linear breakpoints must be strictly increasing");
                    if (pts[i + 1].second < pts[i].second)
                        throw InputError("piecewise-linear values must be nondecreasing");
                    Rational slope =
                        (pts[i + 1].second - pts[i].second) / (pts[i + 1].first - pts[i].first);
                    if (slope < 0) throw InputError("piecewise-linear slopes must be >= 0");
                    if (have_prev && slope > prev_slope)
                        throw InputError("piecewise-linear slopes must be nonincreasing (concave)");
                    prev_slope = slope;
                    have_prev = true;
                }
            } else if constexpr (std::is_same_v<T, AnalyticConcaveCost>) {
                if (c.scale < 0 || c.offset < 0)
                    throw InputError("analytic concave cost needs scale, offset >= 0");
            } else if constexpr (std::is_same_v<T, FairShareCost>) {
                if (!(c.share > 0)) throw InputError("fair-share cost needs share > 0");
                if (c.cap < 1) throw InputError("fair-share plateau cap must be >= 1");
            } else {
                if (c.terms.empty()) throw InputError("conical cost needs at least one term");
                for (const auto& t : c.terms)
                    if (t.coeff < 0) throw InputError("conical coefficients must be >= 0");
            }
        },
        v);
}

}  // namespace detail

bool rational_closed(const CostSpec& cost) {
    switch (cost.kind()) {
        case CostKind::Constant:
        case CostKind::Monomial:
        case CostKind::Polynomial:
        case CostKind::PiecewiseLinear:
            return true;
        case CostKind::AnalyticConcave:
            return cost.as<AnalyticConcaveCost>().form == ConcaveForm::Affine;
        case CostKind::FairShare:
            return false;  // evaluation is rational but the integral is not
        case CostKind::Conical: {
            for (const auto& t : cost.as<ConicalCost>().terms)
                if (!rational_closed(t.cost)) return false;
            return true;
        }
    }
    return false;
}

std::vector<double> cost_breakpoints(const CostSpec& cost) {
    std::vector<double> out;
    switch (cost.kind()) {
        case CostKind::PiecewiseLinear:
            for (const auto& p : cost.as<PiecewiseLinearCost>().points)
                if (p.first > 0) out.push_back(p.first.to_double());
            break;
        case CostKind::FairShare:
            out.push_back(1.0);
            break;
        case CostKind::Conical:
            for (const auto& t : cost.as<ConicalCost>().terms) {
                auto sub = cost_breakpoints(t.cost);
                out.insert(out.end(), sub.begin(), sub.end());
            }
            break;
        default:
            break;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

enum class Shape { Nondecreasing, Nonincreasing, Unknown };

Shape cost_shape(const CostSpec& cost) {
    switch (cost.kind()) {
        case CostKind::Constant:
        case CostKind::Monomial:
        case CostKind::Polynomial:
        case CostKind::PiecewiseLinear:
        case CostKind::AnalyticConcave:
            return Shape::Nondecreasing;  // nonnegative coefficients/slopes throughout
        case CostKind::FairShare:
            return Shape::Nonincreasing;  // cap >= 1 plateau, then share/x
        case CostKind::Conical: {
            bool all_up = true, all_down = true;
            for (const auto& t : cost.as<ConicalCost>().terms) {
                if (t.coeff == 0) continue;
                Shape s = cost_shape(t.cost);
                all_up = all_up && s == Shape::Nondecreasing;
                all_down = all_down && s == Shape::Nonincreasing;
            }
            if (all_up) return Shape::Nondecreasing;
            if (all_down) return Shape::Nonincreasing;
            return Shape::Unknown;
        }
    }
    return Shape::Unknown;
}

std::vector<double> refinement_grid(const CostSpec& cost, double lo, double hi, int n = 1024) {
    std::vector<double> xs;
    xs.reserve(n + 4);
    for (int i = 0; i <= n; ++i) xs.push_back(lo + (hi - lo) * i / n);
    for (double b : cost_breakpoints(cost))
        if (b > lo && b < hi) xs.push_back(b);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
}

}  // namespace

std::pair<double, double> range_extrema(const CostSpec& cost, double w_min, double x) {
    if (!(w_min > 0) || x < w_min) throw InputError("range_extrema: need 0 < w_min <= x");
    auto at = [&](double t) { return evaluate<double>(cost, t); };
    switch (cost_shape(cost)) {
        case Shape::Nondecreasing:
            return {at(w_min), at(x)};
        case Shape::Nonincreasing:
            return {at(x), at(w_min)};
        case Shape::Unknown: {
            double mn = at(w_min), mx = mn;
            for (double t : refinement_grid(cost, w_min, x)) {
                double v = at(t);
                mn = std::min(mn, v);
                mx = std::max(mx, v);
            }
            return {mn, mx};
        }
    }
    throw std::logic_error("range_extrema: unreachable");
}

MonotonicityReport is_nondecreasing(const CostSpec& cost, double hi, double tol) {
    if (!(hi > 0)) throw InputError("is_nondecreasing: domain must be [0, hi] with hi > 0");
    if (cost_shape(cost) == Shape::Nondecreasing) return {};
    // Scan for a drop; track the running maximum as the left witness.
    auto xs = refinement_grid(cost, 0.0, hi);
    double best_x = xs.front(), best_v = evaluate<double>(cost, xs.front());
    for (std::size_t i = 1; i < xs.size(); ++i) {
        double v = evaluate<double>(cost, xs[i]);
        if (v < best_v - tol) return {false, std::make_pair(best_x, xs[i])};
        if (v > best_v) { best_v = v; best_x = xs[i]; }
    }
    return {};
}

CostSpec scale_cost(const CostSpec& cost, const Rational& k) {
    if (k < 0) throw InputError("scale_cost: factor must be >= 0");
    switch (cost.kind()) {
        case CostKind::Constant:
            return constant_cost(cost.as<ConstantCost>().value * k);
        case CostKind::Monomial: {
            const auto& m = cost.as<MonomialCost>();
            return monomial_cost(m.degree, m.coeff * k);
        }
        case CostKind::Polynomial: {
            auto coeffs = cost.as<PolynomialCost>().coeffs;
            for (auto& a : coeffs) a *= k;
            return polynomial_cost(std::move(coeffs));
        }
        case CostKind::PiecewiseLinear: {
            auto pts = cost.as<PiecewiseLinearCost>().points;
            for (auto& p : pts) p.second *= k;
            return piecewise_linear_cost(std::move(pts));
        }
        case CostKind::AnalyticConcave: {
            const auto& a = cost.as<AnalyticConcaveCost>();
            return analytic_concave_cost(a.form, a.scale * k, a.offset * k);
        }
        case CostKind::FairShare: {
            const auto& f = cost.as<FairShareCost>();
            if (k == 0) return constant_cost(0);  // zero share is not representable
            return fair_share_cost(f.share * k, f.cap);
        }
        case CostKind::Conical: {
            auto terms = cost.as<ConicalCost>().terms;
            for (auto& t : terms) t.coeff *= k;
            return conical_cost(std::move(terms));
        }
    }
    throw std::logic_error("scale_cost: unreachable");
}

std::vector<CostSpec> decompose_cost(const CostSpec& cost) {
    std::vector<CostSpec> out;
    switch (cost.kind()) {
        case CostKind::Polynomial: {
            const auto& coeffs = cost.as<PolynomialCost>().coeffs;
            for (std::size_t j = 0; j < coeffs.size(); ++j) {
                if (coeffs[j] == 0) continue;
                if (j == 0)
                    out.push_back(constant_cost(coeffs[0]));
                else
                    out.push_back(monomial_cost(static_cast<int>(j), coeffs[j]));
            }
            if (out.empty()) out.push_back(constant_cost(0));
            break;
        }
        case CostKind::Conical: {
            for (const auto& t : cost.as<ConicalCost>().terms) {
                if (t.coeff == 0) continue;
                for (auto& leaf : decompose_cost(scale_cost(t.cost, t.coeff)))
                    out.push_back(std::move(leaf));
            }
            if (out.empty()) out.push_back(constant_cost(0));
            break;
        }
        default:
            out.push_back(cost);
            break;
    }
    return out;
}

std::string cost_kind_name(CostKind k) {
    switch (k) {
        case CostKind::Constant: return "constant";
        case CostKind::Monomial: return "monomial";
        case CostKind::Polynomial: return "polynomial";
        case CostKind::PiecewiseLinear: return "concave_pwl";
        case CostKind::AnalyticConcave: return "concave_analytic";
        case CostKind::FairShare: return "fairshare";
        case CostKind::Conical: return "conical";
    }
    return "unknown";
}

}  // namespace wcg
