#include "wcg/instances.hpp"

#include <algorithm>

namespace wcg {

namespace detail {

Rational rational_on_grid(std::mt19937_64& rng, const Rational& lo, const Rational& hi,
                          int denominator) {
    if (denominator < 1) throw InputError("rational grid needs denominator >= 1");
    const Rational d(denominator);
    const mpq_class L = (lo * d).raw(), H = (hi * d).raw();
    mpz_class klo, khi;
    mpz_cdiv_q(klo.get_mpz_t(), L.get_num().get_mpz_t(), L.get_den().get_mpz_t());
    mpz_fdiv_q(khi.get_mpz_t(), H.get_num().get_mpz_t(), H.get_den().get_mpz_t());
    if (khi < klo) throw InputError("empty rational grid between bounds");
    const auto span = mpz_class(khi - klo + 1).get_ui();
    const long k = klo.get_si() + static_cast<long>(bounded(rng, span));
    return Rational(k, denominator);
}

namespace {

Rational positive_on_grid(std::mt19937_64& rng, const Rational& lo, const Rational& hi,
                          int denom) {
    // Draw until nonzero; lo > 0 grids never loop.
    for (int tries = 0; tries < 64; ++tries) {
        Rational r = rational_on_grid(rng, lo, hi, denom);
        if (r > 0) return r;
    }
    return hi;
}

CostSpec random_concave(std::mt19937_64& rng, int denom) {
    switch (bounded(rng, 4)) {
        case 0:
            return analytic_concave_cost(ConcaveForm::Sqrt,
                                         positive_on_grid(rng, Rational(1, 2), 3, denom),
                                         rational_on_grid(rng, 0, 2, denom));
        case 1:
            return analytic_concave_cost(ConcaveForm::Log1p,
                                         positive_on_grid(rng, Rational(1, 2), 3, denom),
                                         rational_on_grid(rng, 0, 2, denom));
        case 2:
            return analytic_concave_cost(ConcaveForm::Affine,
                                         positive_on_grid(rng, Rational(1, 4), 2, denom),
                                         rational_on_grid(rng, 0, 2, denom));
        default: {
            // Concave nondecreasing piecewise-linear: sorted slopes, growing x.
            const int segments = 2 + static_cast<int>(bounded(rng, 2));
            std::vector<Rational> slopes;
            for (int s = 0; s < segments; ++s)
                slopes.push_back(rational_on_grid(rng, 0, 3, denom));
            std::sort(slopes.begin(), slopes.end(), [](const auto& a, const auto& b) { return b < a; });
            std::vector<std::pair<Rational, Rational>> pts;
            Rational x(0), y = rational_on_grid(rng, 0, 2, denom);
            pts.emplace_back(x, y);
            for (int s = 0; s < segments; ++s) {
                Rational dx = positive_on_grid(rng, Rational(1, 2), 2, denom);
                x += dx;
                y += slopes[s] * dx;
                pts.emplace_back(x, y);
            }
            return piecewise_linear_cost(std::move(pts));
        }
    }
}

CostSpec random_polynomial(std::mt19937_64& rng, int degree, int denom) {
    std::vector<Rational> coeffs;
    bool any = false;
    for (int j = 0; j <= degree; ++j) {
        if (bounded(rng, 3) == 0) {
            coeffs.push_back(0);
        } else {
            coeffs.push_back(positive_on_grid(rng, Rational(1, denom), 3, denom));
            any = true;
        }
    }
    if (!any) coeffs.back() = 1;
    return polynomial_cost(std::move(coeffs));
}

CostSpec random_cost(std::mt19937_64& rng, const InstanceSpec& spec) {
    switch (spec.family) {
        case CostFamily::Poly:
            return random_polynomial(rng, spec.degree, spec.weight_denominator);
        case CostFamily::Concave:
            return random_concave(rng, spec.weight_denominator);
        case CostFamily::Mixed: {
            std::vector<ConicalTerm> terms;
            terms.push_back({positive_on_grid(rng, Rational(1, 4), 2, spec.weight_denominator),
                             random_concave(rng, spec.weight_denominator)});
            for (int j = 0; j <= spec.degree; ++j) {
                if (bounded(rng, 2) == 0) continue;
                CostSpec part = j == 0 ? constant_cost(1) : monomial_cost(j, 1);
                terms.push_back({positive_on_grid(rng, Rational(1, 4), 2, spec.weight_denominator),
                                 std::move(part)});
            }
            return conical_cost(std::move(terms));
        }
        case CostFamily::FairShare:
            return fair_share_cost(positive_on_grid(rng, Rational(1, 2), 4, spec.weight_denominator),
                                   spec.fairshare_cap);
    }
    throw std::logic_error("random_cost: unreachable");
}

}  // namespace

}  // namespace detail

Game generate_instance(const InstanceSpec& spec, const InstanceCaps& caps) {
    if (spec.n_players < 1 || spec.n_players > caps.max_players)
        throw CapacityError("instance players out of range", caps.max_players);
    if (spec.n_resources < 1 || spec.n_resources > caps.max_resources)
        throw CapacityError("instance resources out of range", caps.max_resources);
    if (spec.strategies_per_player < 1 || spec.strategies_per_player > caps.max_strategies)
        throw CapacityError("instance strategies out of range", caps.max_strategies);
    if (!(spec.weight_lo > 0) || spec.weight_hi < spec.weight_lo)
        throw InputError("instance weight range must satisfy 0 < lo <= hi");

    std::mt19937_64 rng(spec.seed);

    std::vector<Player> players;
    for (int i = 0; i < spec.n_players; ++i)
        players.push_back({"p" + std::to_string(i + 1),
                           detail::positive_on_grid(rng, spec.weight_lo, spec.weight_hi,
                                                    spec.weight_denominator)});
    if (spec.family == CostFamily::FairShare) {
        Rational w_min = players.front().weight;
        for (const auto& p : players) w_min = std::min(w_min, p.weight);
        for (auto& p : players) p.weight /= w_min;
    }

    std::vector<Resource> resources;
    for (int e = 0; e < spec.n_resources; ++e)
        resources.push_back({"e" + std::to_string(e + 1), detail::random_cost(rng, spec)});

    const std::uint64_t subsets = (std::uint64_t{1} << spec.n_resources) - 1;
    std::vector<std::vector<std::vector<int>>> strategies(spec.n_players);
    for (int i = 0; i < spec.n_players; ++i) {
        for (int k = 0; k < spec.strategies_per_player; ++k) {
            const std::uint64_t mask = detail::bounded(rng, subsets) + 1;  // nonempty
            std::vector<int> subset;
            for (int e = 0; e < spec.n_resources; ++e)
                if (mask & (std::uint64_t{1} << e)) subset.push_back(e);
            strategies[i].push_back(std::move(subset));
        }
    }

    Game g(std::move(players), std::move(resources), std::move(strategies));
    if (g.profile_count() > caps.max_profiles)
        throw CapacityError("instance profile count exceeds the cap", caps.max_profiles);
    return g;
}

}  // namespace wcg
