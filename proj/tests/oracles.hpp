#pragma once

// Test-side oracles: straight-from-definition recomputations, kept
// independent of the library's enumeration and closed-form paths.

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "wcg/game.hpp"

namespace oracle {

/// Composite Simpson on a fixed fine grid (no adaptivity, no shared code).
inline double simpson_integral(const std::function<double(double)>& f, double a, double b,
                               int panels = 100000) {
    if (b <= a) return 0.0;
    double h = (b - a) / panels;
    double total = f(a) + f(b);
    for (int i = 1; i < panels; ++i) total += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return total * h / 3.0;
}

/// Integral of a cost with explicit splits at its kinks.
inline double cost_integral(const wcg::CostSpec& c, double a, double b) {
    std::vector<double> cuts{a};
    for (double t : wcg::cost_breakpoints(c))
        if (t > a && t < b) cuts.push_back(t);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    double total = 0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        total += simpson_integral([&](double t) { return wcg::evaluate<double>(c, t); }, cuts[i],
                                  cuts[i + 1]);
    return total;
}

inline double naive_player_cost(const wcg::Game& g, const wcg::Profile& p, int player) {
    double total = 0;
    for (int e : g.strategy(player, p[player])) {
        double load = 0;
        for (int j = 0; j < g.n_players(); ++j)
            for (int e2 : g.strategy(j, p[j]))
                if (e2 == e) load += g.players()[j].weight.to_double();
        total += wcg::evaluate<double>(g.resources()[e].cost, load);
    }
    return total;
}

inline double naive_social_cost(const wcg::Game& g, const wcg::Profile& p) {
    double total = 0;
    for (int i = 0; i < g.n_players(); ++i)
        total += g.players()[i].weight.to_double() * naive_player_cost(g, p, i);
    return total;
}

inline void for_each_profile(const wcg::Game& g, const std::function<void(const wcg::Profile&)>& fn) {
    wcg::Profile p(g.n_players(), 0);
    std::function<void(int)> rec = [&](int i) {
        if (i == g.n_players()) {
            fn(p);
            return;
        }
        for (int k = 0; k < g.strategy_count(i); ++k) {
            p[i] = k;
            rec(i + 1);
        }
        p[i] = 0;
    };
    rec(0);
}

inline std::pair<wcg::Profile, double> naive_optimum(const wcg::Game& g) {
    wcg::Profile best;
    double best_cost = std::numeric_limits<double>::infinity();
    for_each_profile(g, [&](const wcg::Profile& p) {
        double c = naive_social_cost(g, p);
        if (c < best_cost) {
            best = p;
            best_cost = c;
        }
    });
    return {best, best_cost};
}

/// Tightest deviation factor, rebuilding each deviation profile in full.
inline double naive_factor(const wcg::Game& g, const wcg::Profile& p) {
    double worst = 1.0;
    for (int i = 0; i < g.n_players(); ++i) {
        const double now = naive_player_cost(g, p, i);
        if (now <= 0) continue;
        for (int k = 0; k < g.strategy_count(i); ++k) {
            if (k == p[i]) continue;
            wcg::Profile q = p;
            q[i] = k;
            const double dev = naive_player_cost(g, q, i);
            if (dev <= 0) return std::numeric_limits<double>::infinity();
            worst = std::max(worst, now / dev);
        }
    }
    return worst;
}

}  // namespace oracle
