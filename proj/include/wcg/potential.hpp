#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wcg/game.hpp"
#include "wcg/goodness.hpp"

namespace wcg {

// ---------------------------------------------------------------------------
// The approximate potential: per resource,
//   phi_e(I) = integral_0^{w_I} c_e + xi_e * sum_{i in I} w_i c_e(w_i),
// and Phi(s) = sum_e phi_e(N_e(s)) / alpha1_e. Its global minimizer is an
// (alpha, beta)-equilibrium for the composed bounds.
// ---------------------------------------------------------------------------

/// Per-resource constants of the potential: alpha1/xi drive the potential
/// itself, the full tuple is needed for condition verification and for
/// composing the claimed bounds.
template <Scalar S>
struct PotentialConfig {
    std::vector<GoodnessParamsT<S>> per_resource;  // indexed like Game::resources()

    void check_covers(const Game& g) const {
        if (per_resource.size() != static_cast<std::size_t>(g.n_resources()))
            throw InputError("potential config must cover every resource");
    }
};

/// phi_e for one resource and the weights of the players on it.
template <Scalar S>
S resource_potential(const CostSpec& cost, std::span<const S> member_weights, const S& xi) {
    const S zero = ScalarOps<S>::from_int(0);
    S total_weight = zero;
    S weighted_costs = zero;
    for (const S& w : member_weights) {
        if (!(w > zero)) throw InputError("resource potential needs positive member weights");
        total_weight = total_weight + w;
        if (!(xi == zero)) weighted_costs = weighted_costs + w * evaluate<S>(cost, w);
    }
    if (member_weights.empty()) return zero;
    return integrate<S>(cost, zero, total_weight) + xi * weighted_costs;
}

namespace detail {

/// w_i * c_e(w_i) for every (resource, player); the xi-term building block.
template <Scalar S>
std::vector<std::vector<S>> weighted_cost_table(const Game& g) {
    const auto w = weights_as<S>(g);
    std::vector<std::vector<S>> table(g.n_resources());
    for (int e = 0; e < g.n_resources(); ++e) {
        table[e].reserve(g.n_players());
        for (int i = 0; i < g.n_players(); ++i)
            table[e].push_back(w[i] * evaluate<S>(g.resources()[e].cost, w[i]));
    }
    return table;
}

template <Scalar S>
S potential_from_state(const Game& g, const PotentialConfig<S>& config,
                       const std::vector<S>& loads, const std::vector<S>& xi_sums) {
    const S zero = ScalarOps<S>::from_int(0);
    S phi = zero;
    for (int e = 0; e < g.n_resources(); ++e) {
        const auto& params = config.per_resource[e];
        S phi_e = zero;
        if (loads[e] > zero)
            phi_e = integrate<S>(g.resources()[e].cost, zero, loads[e]) + params.xi * xi_sums[e];
        phi = phi + phi_e / params.alpha1;
    }
    return phi;
}

}  // namespace detail

/// Phi(s) for a full profile.
template <Scalar S>
S potential(const Game& g, const Profile& p, const PotentialConfig<S>& config) {
    config.check_covers(g);
    validate_profile(g, p);
    const auto table = detail::weighted_cost_table<S>(g);
    const S zero = ScalarOps<S>::from_int(0);
    std::vector<S> x(g.n_resources(), zero), xi_sums(g.n_resources(), zero);
    const auto w = weights_as<S>(g);
    for (int i = 0; i < g.n_players(); ++i)
        for (int e : g.strategy(i, p[i])) {
            x[e] = x[e] + w[i];
            xi_sums[e] = xi_sums[e] + table[e][i];
        }
    return detail::potential_from_state(g, config, x, xi_sums);
}

// ---- condition verification -------------------------------------------------

enum class PotentialCondition { DeviationLower, DeviationUpper, LoadLower, LoadUpper };

std::string potential_condition_name(PotentialCondition c);

template <Scalar S>
struct ConditionViolation {
    S amount;  // positive when violated
    PotentialCondition condition;
    int resource = -1;
    int player = -1;       // -1 for the per-load condition
    unsigned subset = 0;   // bitmask over players
};

template <Scalar S>
struct ZeroDenominator {
    int resource = -1;
    int player = -1;
    unsigned subset = 0;
};

/// Exhaustive check of the two per-resource conditions over all player
/// subsets. Reports the worst violation, the observed ratio ranges, and any
/// tuples whose denominator vanished.
template <Scalar S>
struct PotentialConditionsReport {
    bool satisfied = true;
    std::optional<ConditionViolation<S>> worst;  // present when some tuple violated
    S deviation_ratio_min{}, deviation_ratio_max{};  // observed range, condition 1
    S load_ratio_min{}, load_ratio_max{};            // observed range, condition 2
    bool any_deviation_ratio = false, any_load_ratio = false;
    std::vector<ZeroDenominator<S>> zero_denominators;
    long long tuples_checked = 0;
};

template <Scalar S>
PotentialConditionsReport<S> verify_potential_conditions(
    const Game& g, const PotentialConfig<S>& config,
    const S& tolerance = ScalarOps<S>::default_tolerance(), int subset_cap = 16) {
    config.check_covers(g);
    const int n = g.n_players();
    if (n > subset_cap)
        throw CapacityError("subset enumeration over " + std::to_string(n) +
                                " players exceeds the cap",
                            static_cast<unsigned long long>(subset_cap));
    const auto w = weights_as<S>(g);
    const S zero = ScalarOps<S>::from_int(0);
    PotentialConditionsReport<S> report;

    auto raise = [&](const S& amount, PotentialCondition cond, int e, int i, unsigned mask) {
        if (!report.worst || report.worst->amount < amount)
            report.worst = ConditionViolation<S>{amount, cond, e, i, mask};
    };

    const unsigned subsets = 1u << n;
    std::vector<S> subset_weight(subsets, zero), phi(subsets, zero), xi_sum(subsets, zero);
    for (int e = 0; e < g.n_resources(); ++e) {
        const auto& cost = g.resources()[e].cost;
        const auto& params = config.per_resource[e];
        std::vector<S> wc(n, zero);
        for (int i = 0; i < n; ++i) wc[i] = w[i] * evaluate<S>(cost, w[i]);

        for (unsigned mask = 1; mask < subsets; ++mask) {
            const int low = __builtin_ctz(mask);
            const unsigned rest = mask & (mask - 1);
            subset_weight[mask] = subset_weight[rest] + w[low];
            xi_sum[mask] = xi_sum[rest] + wc[low];
            phi[mask] = integrate<S>(cost, zero, subset_weight[mask]) + params.xi * xi_sum[mask];
        }

        for (unsigned mask = 0; mask < subsets; ++mask) {
            // Condition on unilateral joins: the phi increment per unit of
            // added weighted cost must sit inside [alpha1, alpha2].
            for (int i = 0; i < n; ++i) {
                if (mask & (1u << i)) continue;
                ++report.tuples_checked;
                const S den = w[i] * evaluate<S>(cost, subset_weight[mask] + w[i]);
                if (!(den > zero)) {
                    report.zero_denominators.push_back({e, i, mask});
                    continue;
                }
                const S ratio = (phi[mask | (1u << i)] - phi[mask]) / den;
                if (!report.any_deviation_ratio) {
                    report.deviation_ratio_min = ratio;
                    report.deviation_ratio_max = ratio;
                    report.any_deviation_ratio = true;
                } else {
                    if (ratio < report.deviation_ratio_min) report.deviation_ratio_min = ratio;
                    if (report.deviation_ratio_max < ratio) report.deviation_ratio_max = ratio;
                }
                raise(params.alpha1 - ratio, PotentialCondition::DeviationLower, e, i, mask);
                raise(ratio - params.alpha2, PotentialCondition::DeviationUpper, e, i, mask);
            }
            // Condition on whole subsets: phi against the social-cost share.
            if (mask != 0) {
                ++report.tuples_checked;
                const S den = subset_weight[mask] * evaluate<S>(cost, subset_weight[mask]);
                if (!(den > zero)) {
                    report.zero_denominators.push_back({e, -1, mask});
                    continue;
                }
                const S ratio = phi[mask] / den;
                if (!report.any_load_ratio) {
                    report.load_ratio_min = ratio;
                    report.load_ratio_max = ratio;
                    report.any_load_ratio = true;
                } else {
                    if (ratio < report.load_ratio_min) report.load_ratio_min = ratio;
                    if (report.load_ratio_max < ratio) report.load_ratio_max = ratio;
                }
                raise(params.beta1 - ratio, PotentialCondition::LoadLower, e, -1, mask);
                raise(ratio - params.beta2, PotentialCondition::LoadUpper, e, -1, mask);
            }
        }
    }
    report.satisfied = !report.worst || !(report.worst->amount > tolerance);
    return report;
}

// ---- minimization -----------------------------------------------------------

/// Global potential minimizer by exhaustive enumeration, lexicographic
/// tie-break.
template <Scalar S>
std::pair<Profile, S> minimize_potential(const Game& g, const PotentialConfig<S>& config,
                                         unsigned long long cap = kDefaultProfileCap) {
    config.check_covers(g);
    const auto table = detail::weighted_cost_table<S>(g);
    const S zero = ScalarOps<S>::from_int(0);
    Profile best;
    S best_phi = zero;
    bool have = false;
    std::vector<S> xi_sums(g.n_resources(), zero);
    enumerate_profiles<S>(
        g,
        [&](const Profile& p, const std::vector<S>& x) {
            for (auto& v : xi_sums) v = zero;
            for (int i = 0; i < g.n_players(); ++i)
                for (int e : g.strategy(i, p[i])) xi_sums[e] = xi_sums[e] + table[e][i];
            S phi = detail::potential_from_state(g, config, x, xi_sums);
            if (!have || phi < best_phi) {
                best = p;
                best_phi = std::move(phi);
                have = true;
            }
        },
        cap);
    return {best, best_phi};
}

enum class MoveRule { BestImprovement, FirstImprovement };

template <Scalar S>
struct DescentResult {
    Profile profile;
    S potential_value{};
    long long moves = 0;
};

/// Unilateral local search on the potential: stops when no single-player
/// move decreases Phi by more than epsilon. Terminates because Phi strictly
/// decreases over a finite profile set.
template <Scalar S>
DescentResult<S> potential_descent(const Game& g, const PotentialConfig<S>& config,
                                   Profile start, MoveRule rule,
                                   std::optional<S> epsilon = std::nullopt) {
    config.check_covers(g);
    validate_profile(g, start);
    S eps = ScalarOps<S>::from_int(0);
    if (epsilon) {
        eps = *epsilon;
    } else if constexpr (!ScalarOps<S>::exact) {
        eps = 1e-12;
    }
    DescentResult<S> result;
    result.profile = std::move(start);
    result.potential_value = potential(g, result.profile, config);
    while (true) {
        std::optional<std::pair<int, int>> best_move;
        S best_phi = result.potential_value;
        bool moved = false;
        for (int i = 0; i < g.n_players() && !moved; ++i) {
            const int cur = result.profile[i];
            for (int k = 0; k < g.strategy_count(i) && !moved; ++k) {
                if (k == cur) continue;
                Profile cand = result.profile;
                cand[i] = k;
                S phi = potential(g, cand, config);
                if (phi < best_phi - eps) {
                    best_phi = phi;
                    best_move = {i, k};
                    if (rule == MoveRule::FirstImprovement) moved = true;
                }
            }
        }
        if (!best_move) break;
        result.profile[best_move->first] = best_move->second;
        result.potential_value = best_phi;
        ++result.moves;
    }
    return result;
}

// ---- certification ----------------------------------------------------------

/// Checks a profile against claimed (alpha, beta): tight factor via full
/// deviation scan, beta against the enumerated optimum.
template <Scalar S>
EquilibriumCertificate<S> certify(const Game& g, const Profile& p,
                                  const Extended<S>& claimed_alpha,
                                  const Extended<S>& claimed_beta,
                                  const S& tol = ScalarOps<S>::default_tolerance(),
                                  unsigned long long cap = kDefaultProfileCap) {
    const auto x = loads<S>(g, p);
    const auto scan = detail::scan_deviations(g, p, x);
    const S zero = ScalarOps<S>::from_int(0);

    EquilibriumCertificate<S> cert;
    cert.profile = p;
    cert.alpha = scan.factor;
    cert.deviations_checked = scan.deviations_checked;
    cert.social = detail::social_cost_from_loads(g, x);
    cert.opt = optimum<S>(g, cap).second;
    if (cert.opt > zero)
        cert.beta = Extended<S>::finite(cert.social / cert.opt);
    else
        cert.beta = cert.social > zero ? Extended<S>::inf() : Extended<S>::finite(ScalarOps<S>::from_int(1));
    cert.claimed_alpha = claimed_alpha;
    cert.claimed_beta = claimed_beta;

    const bool alpha_ok =
        claimed_alpha.infinite ||
        (!cert.alpha.infinite && cert.alpha.value <= claimed_alpha.value + tol);
    const bool beta_ok =
        claimed_beta.infinite || cert.social <= claimed_beta.value * cert.opt + tol;
    cert.passed = alpha_ok && beta_ok;
    return cert;
}

}  // namespace wcg
