#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "wcg/catalog.hpp"
#include "wcg/instances.hpp"
#include "wcg/potential.hpp"

using namespace wcg;

namespace {

Game parallel_links() {
    return Game({{"p1", 1}, {"p2", 1}},
                {{"e1", monomial_cost(1)}, {"e2", monomial_cost(1)}},
                {{{0}, {1}}, {{0}, {1}}});
}

PotentialConfig<Rational> linear_config_half_alpha(const Game& g) {
    PotentialConfig<Rational> config;
    for (int e = 0; e < g.n_resources(); ++e)
        config.per_resource.push_back(monomial_goodness<Rational>(1, Rational(1, 2)));
    return config;
}

}  // namespace

TEST_CASE("per-resource potential value") {
    std::vector<Rational> weights{1, 2};
    auto linear = monomial_cost(1);
    CHECK(resource_potential<Rational>(linear, weights, 0) == Rational(9, 2));
    CHECK(resource_potential<Rational>(linear, weights, Rational(1, 2)) == Rational(7));
    CHECK(resource_potential<Rational>(linear, std::vector<Rational>{}, Rational(1, 2)) ==
          Rational(0));
    CHECK(resource_potential<Rational>(fair_share_cost(1, 1), std::vector<Rational>{},
                                       Rational(0)) == Rational(0));
    std::vector<Rational> bad{1, -1};
    CHECK_THROWS_AS(resource_potential<Rational>(linear, bad, Rational(0)), InputError);
}

TEST_CASE("profile potential composes resource terms") {
    Game single({{"p1", 1}, {"p2", 2}}, {{"e", monomial_cost(1)}}, {{{0}}, {{0}}});
    PotentialConfig<Rational> config{{monomial_goodness<Rational>(1, Rational(1, 2))}};
    CHECK(potential<Rational>(single, {0, 0}, config) == Rational(9));

    Game idle({{"p1", 1}}, {{"e", monomial_cost(2)}}, {{{}, {0}}});
    PotentialConfig<Rational> config2{{monomial_goodness<Rational>(2, Rational(1, 2))}};
    CHECK(potential<Rational>(idle, {0}, config2) == Rational(0));

    Game links = parallel_links();
    auto config3 = linear_config_half_alpha(links);
    CHECK(potential<Rational>(links, {0, 1}, config3) == Rational(2));
    CHECK(potential<Rational>(links, {0, 0}, config3) == Rational(4));

    PotentialConfig<Rational> short_config{{monomial_goodness<Rational>(1, Rational(1, 2))}};
    CHECK_THROWS_AS(potential<Rational>(links, {0, 0}, short_config), InputError);
}

TEST_CASE("affine costs give an exact potential at xi = 1/2") {
    Game g({{"p1", 1}, {"p2", Rational(3, 2)}, {"p3", 2}},
           {{"e1", polynomial_cost({2, 3})}, {"e2", monomial_cost(1, 2)}},
           {{{0}, {1}}, {{0, 1}, {1}}, {{0}, {0, 1}}});
    Game decomposed = gadget_decompose(g);
    auto config = make_catalog_config<Rational>(decomposed, Rational(1), 1);
    auto report = verify_potential_conditions<Rational>(decomposed, config);
    CHECK(report.satisfied);
    REQUIRE(report.any_deviation_ratio);
    CHECK(report.deviation_ratio_min == Rational(1));
    CHECK(report.deviation_ratio_max == Rational(1));
}

TEST_CASE("catalog parameters satisfy both conditions on fixed weight sets") {
    // Degree-2 monomial with mu = 1/2 over weights {1, 3/2, 2}.
    Game quad({{"p1", 1}, {"p2", Rational(3, 2)}, {"p3", 2}}, {{"e", monomial_cost(2)}},
              {{{0}}, {{0}}, {{0}}});
    PotentialConfig<Rational> config{{monomial_goodness<Rational>(2, Rational(1, 2))}};
    CHECK(verify_potential_conditions<Rational>(quad, config).satisfied);

    // Unit fair share over weights {1, 2, 3}.
    Game fs({{"p1", 1}, {"p2", 2}, {"p3", 3}}, {{"e", fair_share_cost(1, 1)}},
            {{{0}}, {{0}}, {{0}}});
    PotentialConfig<double> fs_config{{fairshare_goodness(1.0, 3.0, 6.0)}};
    auto fs_report = verify_potential_conditions<double>(fs, fs_config);
    CHECK(fs_report.satisfied);

    // The subset condition tops out at the full load: ratio = beta2 there.
    CHECK(fs_report.load_ratio_max == doctest::Approx(std::log(6.0) + 1.0));
}

TEST_CASE("zero-cost resources are reported as zero denominators") {
    Game g({{"p1", 1}}, {{"e", constant_cost(0)}}, {{{0}}});
    PotentialConfig<Rational> config{{constant_goodness<Rational>()}};
    auto report = verify_potential_conditions<Rational>(g, config);
    CHECK_FALSE(report.zero_denominators.empty());
}

TEST_CASE("subset cap guards condition verification") {
    std::vector<Player> players;
    std::vector<std::vector<std::vector<int>>> strategies;
    for (int i = 0; i < 5; ++i) {
        players.push_back({"p" + std::to_string(i), 1});
        strategies.push_back({{0}});
    }
    Game g(players, {{"e", monomial_cost(1)}}, strategies);
    PotentialConfig<Rational> config{{monomial_goodness<Rational>(1, Rational(1, 2))}};
    CHECK_THROWS_AS(verify_potential_conditions<Rational>(g, config, Rational(0), 4),
                    CapacityError);
}

TEST_CASE("exhaustive minimization finds the split") {
    Game links = parallel_links();
    auto config = linear_config_half_alpha(links);
    auto [profile, phi] = minimize_potential<Rational>(links, config);
    CHECK(profile == Profile{0, 1});
    CHECK(phi == Rational(2));

    Game single({{"p1", 1}}, {{"e", monomial_cost(2)}}, {{{0}}});
    PotentialConfig<Rational> sc{{monomial_goodness<Rational>(2, Rational(1, 2))}};
    CHECK(minimize_potential<Rational>(single, sc).first == Profile{0});

    Game fs({{"p1", 1}, {"p2", 1}}, {{"e", fair_share_cost(1, 1)}}, {{{0}}, {{0}}});
    PotentialConfig<double> fsc{{fairshare_goodness(1.0, 1.0, 2.0)}};
    CHECK(minimize_potential<double>(fs, fsc).first == Profile{0, 0});
}

TEST_CASE("descent walks to a local minimum") {
    Game links = parallel_links();
    auto config = linear_config_half_alpha(links);

    auto from_stack = potential_descent<Rational>(links, config, {0, 0}, MoveRule::BestImprovement);
    CHECK(from_stack.moves == 1);
    CHECK(potential<Rational>(links, from_stack.profile, config) == Rational(2));

    auto at_min = potential_descent<Rational>(links, config, {0, 1}, MoveRule::BestImprovement);
    CHECK(at_min.moves == 0);
    CHECK(at_min.profile == Profile{0, 1});

    // Three unit players on two quadratic links settle at a 2/1 split.
    Game three({{"p1", 1}, {"p2", 1}, {"p3", 1}},
               {{"e1", monomial_cost(2)}, {"e2", monomial_cost(2)}},
               {{{0}, {1}}, {{0}, {1}}, {{0}, {1}}});
    PotentialConfig<Rational> tc;
    for (int e = 0; e < 2; ++e)
        tc.per_resource.push_back(monomial_goodness<Rational>(2, Rational(1, 3)));
    for (auto rule : {MoveRule::BestImprovement, MoveRule::FirstImprovement}) {
        auto run = potential_descent<Rational>(three, tc, {0, 0, 0}, rule);
        auto x = loads<Rational>(three, run.profile);
        CHECK(std::max(x[0], x[1]) == Rational(2));
        CHECK(std::min(x[0], x[1]) == Rational(1));
    }
}

TEST_CASE("certification against claimed thresholds") {
    Game links = parallel_links();
    using E = Extended<Rational>;

    auto pass = certify<Rational>(links, {0, 1}, E::finite(1), E::finite(1), 0);
    CHECK(pass.passed);
    CHECK(pass.alpha.value == Rational(1));
    CHECK(pass.beta.value == Rational(1));
    CHECK(pass.deviations_checked == 2);

    auto fail = certify<Rational>(links, {0, 0}, E::finite(1), E::finite(1), 0);
    CHECK_FALSE(fail.passed);
    CHECK(fail.alpha.value == Rational(2));  // tight values are carried either way
    CHECK(fail.beta.value == Rational(2));

    auto lax = certify<Rational>(links, {0, 0}, E::inf(), E::inf(), 0);
    CHECK(lax.passed);
}

TEST_CASE("minimizers certify at the composed bounds on random instances") {
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        InstanceSpec spec;
        spec.family = seed % 2 ? CostFamily::Poly : CostFamily::Mixed;
        spec.degree = 2;
        spec.seed = seed * 101;
        Game g = gadget_decompose(generate_instance(spec));

        if (spec.family == CostFamily::Poly) {
            const Rational lambda(5, 2);
            auto config = make_catalog_config<Rational>(g, lambda, 2);
            auto [claim_a, claim_b] = composed_bounds(config);
            auto [profile, phi] = minimize_potential<Rational>(g, config);
            auto cert = certify<Rational>(g, profile, Extended<Rational>::finite(claim_a),
                                          Extended<Rational>::finite(claim_b), 0);
            CHECK(cert.passed);
        } else {
            const double lambda = 2.5;
            auto config = make_catalog_config<double>(g, lambda, 2);
            auto [claim_a, claim_b] = composed_bounds(config);
            auto [profile, phi] = minimize_potential<double>(g, config);
            auto cert = certify<double>(g, profile, Extended<double>::finite(claim_a),
                                        Extended<double>::finite(claim_b), 1e-9);
            CHECK(cert.passed);
        }
    }
}

TEST_CASE("potential drops imply bounded cost drops") {
    // Both implications, over all profiles/deviations of small instances.
    for (std::uint64_t seed : {3u, 8u, 21u}) {
        InstanceSpec spec;
        spec.family = CostFamily::Poly;
        spec.degree = 2;
        spec.n_players = 3;
        spec.seed = seed;
        Game g = gadget_decompose(generate_instance(spec));
        const Rational lambda(2);
        auto config = make_catalog_config<Rational>(g, lambda, 2);
        auto [alpha, beta] = composed_bounds(config);

        std::vector<Profile> profiles;
        std::vector<Rational> phis, costs;
        oracle::for_each_profile(g, [&](const Profile& p) {
            profiles.push_back(p);
            phis.push_back(potential<Rational>(g, p, config));
            costs.push_back(social_cost<Rational>(g, p));
        });

        for (std::size_t a = 0; a < profiles.size(); ++a) {
            // Unilateral deviations: potential order bounds the cost ratio.
            for (int i = 0; i < g.n_players(); ++i)
                for (int k = 0; k < g.strategy_count(i); ++k) {
                    if (k == profiles[a][i]) continue;
                    Profile q = profiles[a];
                    q[i] = k;
                    if (phis[a] <= potential<Rational>(g, q, config)) {
                        CHECK(player_cost<Rational>(g, profiles[a], i) <=
                              alpha * player_cost<Rational>(g, q, i));
                    }
                }
            // Global order bounds the social-cost ratio.
            for (std::size_t b = 0; b < profiles.size(); ++b)
                if (phis[a] <= phis[b]) CHECK(costs[a] <= beta * costs[b]);
        }
    }
}

TEST_CASE("subset averages sit between range extrema") {
    for (std::uint64_t seed : {2u, 9u}) {
        InstanceSpec spec;
        spec.family = CostFamily::Concave;
        spec.n_players = 5;
        spec.seed = seed;
        Game g = generate_instance(spec);
        const auto w = weights_as<double>(g);
        const double w_min = g.min_weight().to_double();
        for (const auto& r : g.resources()) {
            for (unsigned mask = 1; mask < (1u << g.n_players()); ++mask) {
                double x = 0, avg = 0;
                for (int i = 0; i < g.n_players(); ++i)
                    if (mask & (1u << i)) {
                        x += w[i];
                        avg += w[i] * evaluate<double>(r.cost, w[i]);
                    }
                avg /= x;
                auto [lo, hi] = range_extrema(r.cost, w_min, x);
                CHECK(lo <= avg + 1e-9);
                CHECK(avg <= hi + 1e-9);
            }
        }
    }
}

TEST_CASE("descent output always certifies the composed alpha") {
    for (std::uint64_t seed = 40; seed <= 52; ++seed) {
        InstanceSpec spec;
        spec.family = CostFamily::Concave;
        spec.seed = seed;
        Game g = gadget_decompose(generate_instance(spec));
        const double lambda = 1.75;
        auto config = make_catalog_config<double>(g, lambda, 1);
        auto [alpha, beta] = composed_bounds(config);
        Profile start(g.n_players(), 0);
        auto run = potential_descent<double>(g, config, start, MoveRule::BestImprovement);
        auto factor = approximation_factor<double>(g, run.profile);
        REQUIRE_FALSE(factor.infinite);
        CHECK(factor.value <= alpha + 1e-9);  // beta is reported, not asserted
    }
}
