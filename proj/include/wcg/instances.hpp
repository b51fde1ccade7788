#pragma once

#include <cstdint>
#include <random>

#include "wcg/bounds.hpp"
#include "wcg/game.hpp"

namespace wcg {

/// Deterministic random-instance recipe. Same spec (including seed) always
/// produces the same game.
struct InstanceSpec {
    CostFamily family = CostFamily::Poly;
    int degree = 2;                 // poly/mixed: maximum monomial degree
    Rational fairshare_cap = 1;     // fair-share plateau (the trade-off parameter)
    int n_players = 3;
    int n_resources = 4;
    int strategies_per_player = 3;
    Rational weight_lo = Rational(1, 2);
    Rational weight_hi = 4;
    int weight_denominator = 8;     // weights land on the grid k/denominator
    std::uint64_t seed = 0;
};

/// Caps the generator refuses to exceed (desk-scale enumeration budget).
struct InstanceCaps {
    int max_players = 5;
    int max_resources = 6;
    int max_strategies = 4;
    unsigned long long max_profiles = kDefaultProfileCap;
};

/// Fair-share instances rescale all weights by 1/w_min so that w_min = 1.
Game generate_instance(const InstanceSpec& spec, const InstanceCaps& caps = {});

namespace detail {

/// Uniform draw in [0, n); plain modulo reduction, reproducible everywhere.
inline std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
    return n == 0 ? 0 : rng() % n;
}

/// Uniform rational on the grid {k / denominator} intersected with [lo, hi].
Rational rational_on_grid(std::mt19937_64& rng, const Rational& lo, const Rational& hi,
                          int denominator);

}  // namespace detail

}  // namespace wcg
