#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <vector>

#include "wcg/errors.hpp"

namespace wcg {

namespace detail {

inline double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double fa, double fm, double fb, double whole, double tol,
                               int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(a, m, fa, flm, fm);
    const double right = simpson(m, b, fm, frm, fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive interval-halving Simpson quadrature. Intended for cost variants
/// without a closed-form antiderivative; the built-in catalog uses closed
/// forms and this routine only cross-checks them.
inline double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                 double tol = 1e-10, int max_depth = 48) {
    if (a > b) throw InputError("integrate_adaptive: reversed interval");
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    return detail::adaptive_simpson(f, a, b, fa, fm, fb, detail::simpson(a, b, fa, fm, fb), tol,
                                    max_depth);
}

/// Same, but splits first at known kinks so discontinuities do not stall
/// the error estimate.
inline double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                 std::span<const double> breakpoints, double tol = 1e-10) {
    if (a > b) throw InputError("integrate_adaptive: reversed interval");
    std::vector<double> cuts{a};
    for (double c : breakpoints)
        if (c > a && c < b) cuts.push_back(c);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        total += integrate_adaptive(f, cuts[i], cuts[i + 1], tol);
    return total;
}

}  // namespace wcg
