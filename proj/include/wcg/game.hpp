#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <set>
#include <string>
#include <vector>

#include "wcg/cost.hpp"
#include "wcg/errors.hpp"
#include "wcg/scalar.hpp"

namespace wcg {

struct Player {
    std::string id;
    Rational weight;  // > 0
};

struct Resource {
    std::string id;
    CostSpec cost;
};

/// A weighted congestion game: players with weights pick resource subsets
/// from explicit strategy lists; each resource charges its cost function of
/// the total weight on it. Immutable after construction.
class Game {
public:
    Game(std::vector<Player> players, std::vector<Resource> resources,
         std::vector<std::vector<std::vector<int>>> strategies);

    int n_players() const { return static_cast<int>(players_.size()); }
    int n_resources() const { return static_cast<int>(resources_.size()); }
    const std::vector<Player>& players() const { return players_; }
    const std::vector<Resource>& resources() const { return resources_; }

    const std::vector<std::vector<int>>& strategies(int player) const { return strategies_[player]; }
    const std::vector<int>& strategy(int player, int k) const { return strategies_[player][k]; }
    int strategy_count(int player) const { return static_cast<int>(strategies_[player].size()); }

    const Rational& total_weight() const { return total_weight_; }
    const Rational& min_weight() const { return min_weight_; }
    const Rational& max_weight() const { return max_weight_; }

    int resource_index(const std::string& id) const;  // throws InputError when unknown
    int player_index(const std::string& id) const;

    /// Number of strategy profiles, saturated at 2^64-1.
    unsigned long long profile_count() const;

private:
    std::vector<Player> players_;
    std::vector<Resource> resources_;
    std::vector<std::vector<std::vector<int>>> strategies_;  // [player][k] -> sorted resource indices
    Rational total_weight_, min_weight_, max_weight_;
};

/// One strategy index per player.
using Profile = std::vector<int>;

void validate_profile(const Game& g, const Profile& p);

inline constexpr unsigned long long kDefaultProfileCap = 2'000'000;
inline constexpr int kDefaultSubsetCap = 20;

// ---------------------------------------------------------------------------
// Evaluation (templated on the arithmetic backend).
// ---------------------------------------------------------------------------

template <Scalar S>
std::vector<S> weights_as(const Game& g) {
    std::vector<S> w;
    w.reserve(g.n_players());
    for (const auto& p : g.players()) w.push_back(ScalarOps<S>::from_rational(p.weight));
    return w;
}

/// Per-resource total weight under the profile.
template <Scalar S>
std::vector<S> loads(const Game& g, const Profile& p) {
    validate_profile(g, p);
    std::vector<S> x(g.n_resources(), ScalarOps<S>::from_int(0));
    for (int i = 0; i < g.n_players(); ++i) {
        const S w = ScalarOps<S>::from_rational(g.players()[i].weight);
        for (int e : g.strategy(i, p[i])) x[e] = x[e] + w;
    }
    return x;
}

template <Scalar S>
S resource_load(const Game& g, const Profile& p, int resource) {
    if (resource < 0 || resource >= g.n_resources()) throw InputError("unknown resource index");
    return loads<S>(g, p)[resource];
}

template <Scalar S>
S resource_load(const Game& g, const Profile& p, const std::string& resource_id) {
    return loads<S>(g, p)[g.resource_index(resource_id)];
}

template <Scalar S>
S player_cost(const Game& g, const Profile& p, int player) {
    if (player < 0 || player >= g.n_players()) throw InputError("unknown player index");
    const auto x = loads<S>(g, p);
    S total = ScalarOps<S>::from_int(0);
    for (int e : g.strategy(player, p[player]))
        total = total + evaluate<S>(g.resources()[e].cost, x[e]);
    return total;
}

namespace detail {

template <Scalar S>
S social_cost_from_loads(const Game& g, const std::vector<S>& x) {
    S total = ScalarOps<S>::from_int(0);
    const S zero = ScalarOps<S>::from_int(0);
    for (int e = 0; e < g.n_resources(); ++e) {
        if (x[e] == zero) continue;  // unused resources contribute nothing
        total = total + x[e] * evaluate<S>(g.resources()[e].cost, x[e]);
    }
    return total;
}

}  // namespace detail

/// Weighted sum of player costs. Computed from the per-resource form
/// sum_e x_e c_e(x_e) and cross-checked against sum_i w_i C_i.
template <Scalar S>
S social_cost(const Game& g, const Profile& p) {
    const auto x = loads<S>(g, p);
    const S by_resource = detail::social_cost_from_loads(g, x);
    S by_player = ScalarOps<S>::from_int(0);
    for (int i = 0; i < g.n_players(); ++i) {
        S ci = ScalarOps<S>::from_int(0);
        for (int e : g.strategy(i, p[i])) ci = ci + evaluate<S>(g.resources()[e].cost, x[e]);
        by_player = by_player + ScalarOps<S>::from_rational(g.players()[i].weight) * ci;
    }
    if constexpr (ScalarOps<S>::exact) {
        if (!(by_resource == by_player))
            throw std::logic_error("social cost identity violated in exact mode");
    } else {
        const double a = ScalarOps<S>::to_double(by_resource);
        const double b = ScalarOps<S>::to_double(by_player);
        if (std::abs(a - b) > 1e-9 * (1.0 + std::max(std::abs(a), std::abs(b))))
            throw std::logic_error("social cost identity violated beyond float tolerance");
    }
    return by_resource;
}

/// Visits every profile in lexicographic order with its load vector, which
/// is maintained incrementally. visit(const Profile&, const std::vector<S>&).
template <Scalar S, class Visitor>
void enumerate_profiles(const Game& g, Visitor&& visit,
                        unsigned long long cap = kDefaultProfileCap) {
    if (g.profile_count() > cap)
        throw CapacityError("profile enumeration over " + std::to_string(g.profile_count()) +
                                " profiles exceeds the cap",
                            cap);
    const int n = g.n_players();
    const auto w = weights_as<S>(g);
    Profile p(n, 0);
    std::vector<S> x(g.n_resources(), ScalarOps<S>::from_int(0));
    for (int i = 0; i < n; ++i)
        for (int e : g.strategy(i, 0)) x[e] = x[e] + w[i];

    auto switch_strategy = [&](int player, int from, int to) {
        for (int e : g.strategy(player, from)) {
            x[e] = x[e] - w[player];
            if constexpr (!ScalarOps<S>::exact) {
                // Incremental updates can leave an emptied resource a few ulps
                // below zero; snap those back.
                if (x[e] < 0.0) {
                    if (x[e] < -1e-9) throw std::logic_error("load drifted below zero");
                    x[e] = 0.0;
                }
            }
        }
        for (int e : g.strategy(player, to)) x[e] = x[e] + w[player];
    };

    const Profile& p_view = p;
    const std::vector<S>& x_view = x;
    while (true) {
        visit(p_view, x_view);
        int k = n - 1;
        while (k >= 0 && p[k] + 1 == g.strategy_count(k)) --k;
        if (k < 0) break;
        switch_strategy(k, p[k], p[k] + 1);
        ++p[k];
        for (int j = k + 1; j < n; ++j) {
            if (p[j] != 0) switch_strategy(j, p[j], 0);
            p[j] = 0;
        }
    }
}

/// Globally minimal social cost with a witnessing profile; lexicographic
/// tie-break (first minimizer in enumeration order).
template <Scalar S>
std::pair<Profile, S> optimum(const Game& g, unsigned long long cap = kDefaultProfileCap) {
    Profile best;
    S best_cost = ScalarOps<S>::from_int(0);
    bool have = false;
    enumerate_profiles<S>(
        g,
        [&](const Profile& p, const std::vector<S>& x) {
            S c = detail::social_cost_from_loads(g, x);
            if (!have || c < best_cost) {
                best = p;
                best_cost = std::move(c);
                have = true;
            }
        },
        cap);
    return {best, best_cost};
}

template <Scalar S>
struct DeviationScan {
    Extended<S> factor = Extended<S>::finite(ScalarOps<S>::from_int(1));
    long long deviations_checked = 0;
};

namespace detail {

/// Tightest factor over all unilateral deviations, given precomputed loads.
template <Scalar S>
DeviationScan<S> scan_deviations(const Game& g, const Profile& p, const std::vector<S>& x) {
    const auto w = weights_as<S>(g);
    const S zero = ScalarOps<S>::from_int(0);
    std::vector<S> at_load(g.n_resources(), zero);
    for (int e = 0; e < g.n_resources(); ++e)
        at_load[e] = evaluate<S>(g.resources()[e].cost, x[e]);

    DeviationScan<S> scan;
    for (int i = 0; i < g.n_players(); ++i) {
        const auto& current = g.strategy(i, p[i]);
        S cost_now = zero;
        for (int e : current) cost_now = cost_now + at_load[e];
        for (int k = 0; k < g.strategy_count(i); ++k) {
            if (k == p[i]) continue;
            ++scan.deviations_checked;
            if (!(cost_now > zero)) continue;  // zero-cost player: ratio counts as 1
            S cost_dev = zero;
            for (int e : g.strategy(i, k)) {
                const bool already_there = std::binary_search(current.begin(), current.end(), e);
                cost_dev = cost_dev +
                           (already_there ? at_load[e]
                                          : evaluate<S>(g.resources()[e].cost, x[e] + w[i]));
            }
            if (!(cost_dev > zero)) {
                scan.factor = Extended<S>::inf();
            } else {
                scan.factor = max(scan.factor, Extended<S>::finite(cost_now / cost_dev));
            }
        }
    }
    return scan;
}

}  // namespace detail

/// Smallest alpha for which the profile is an alpha-approximate equilibrium;
/// 1 when no deviation improves, +infinity when a deviation has zero cost
/// while the player currently pays a positive amount.
template <Scalar S>
Extended<S> approximation_factor(const Game& g, const Profile& p) {
    const auto x = loads<S>(g, p);
    return detail::scan_deviations(g, p, x).factor;
}

/// Best equilibrium social cost over optimum, among profiles whose factor is
/// at most alpha (+ tol). Throws EmptyEquilibriumSet when nothing qualifies.
template <Scalar S>
S price_of_stability(const Game& g, const Extended<S>& alpha,
                     const S& tol = ScalarOps<S>::default_tolerance(),
                     unsigned long long cap = kDefaultProfileCap) {
    const S zero = ScalarOps<S>::from_int(0);
    S best_all = zero, best_eq = zero;
    bool have_all = false, have_eq = false;
    enumerate_profiles<S>(
        g,
        [&](const Profile& p, const std::vector<S>& x) {
            S c = detail::social_cost_from_loads(g, x);
            if (!have_all || c < best_all) {
                best_all = c;
                have_all = true;
            }
            const auto scan = detail::scan_deviations(g, p, x);
            const bool qualifies =
                alpha.infinite || (!scan.factor.infinite && scan.factor.value <= alpha.value + tol);
            if (qualifies && (!have_eq || c < best_eq)) {
                best_eq = std::move(c);
                have_eq = true;
            }
        },
        cap);
    if (!have_eq)
        throw EmptyEquilibriumSet("no profile is an equilibrium at the requested factor");
    if (!(best_all > zero)) throw InputError("price of stability undefined: optimum cost is 0");
    return best_eq / best_all;
}

/// All reachable loads: subset sums of the player weights, deduplicated.
template <Scalar S>
std::vector<S> reachable_loads(const Game& g, int subset_cap = kDefaultSubsetCap) {
    if (g.n_players() > subset_cap)
        throw CapacityError("subset enumeration over " + std::to_string(g.n_players()) +
                                " players exceeds the cap",
                            static_cast<unsigned long long>(subset_cap));
    std::set<S> sums{ScalarOps<S>::from_int(0)};
    for (const auto& pl : g.players()) {
        const S w = ScalarOps<S>::from_rational(pl.weight);
        std::set<S> next = sums;
        for (const auto& s : sums) next.insert(s + w);
        sums = std::move(next);
    }
    std::vector<S> out(sums.begin(), sums.end());
    if constexpr (!ScalarOps<S>::exact) {
        // Merge float near-duplicates produced by different addition orders.
        std::vector<S> merged;
        for (double v : out)
            if (merged.empty() || v - merged.back() > 1e-12 * (1.0 + std::abs(v)))
                merged.push_back(v);
        out = std::move(merged);
    }
    return out;
}

/// Outcome of checking a profile against claimed (alpha, beta) thresholds.
template <Scalar S>
struct EquilibriumCertificate {
    Profile profile;
    Extended<S> alpha;  // tightest approximation factor of the profile
    Extended<S> beta;   // social cost divided by the optimum
    long long deviations_checked = 0;
    S social{};
    S opt{};
    Extended<S> claimed_alpha, claimed_beta;
    bool passed = false;
};

}  // namespace wcg
