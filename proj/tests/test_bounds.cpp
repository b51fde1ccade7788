#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "wcg/bounds.hpp"
#include "wcg/instances.hpp"

using namespace wcg;

TEST_CASE("composition over parameter lists") {
    std::vector<GoodnessParamsT<Rational>> poly2;
    poly2.push_back(constant_goodness<Rational>());
    poly2.push_back(monomial_goodness<Rational>(1, Rational(1, 2)));
    poly2.push_back(monomial_goodness<Rational>(2, Rational(1, 2)));  // mu = 1/lambda at lambda=2
    auto [alpha, beta] = compose_bounds(poly2);
    CHECK(alpha == Rational(2));
    CHECK(beta == Rational(3, 2));

    std::vector<GoodnessParamsT<Rational>> concave{concave_goodness<Rational>(1)};
    auto [ca, cb] = compose_bounds(concave);
    CHECK(ca == Rational(3, 2));
    CHECK(cb == Rational(3));

    std::vector<GoodnessParamsT<Rational>> unit{constant_goodness<Rational>()};
    auto [ua, ub] = compose_bounds(unit);
    CHECK(ua == Rational(1));
    CHECK(ub == Rational(1));

    std::vector<GoodnessParamsT<Rational>> empty;
    CHECK_THROWS_AS(compose_bounds(empty), InputError);
}

TEST_CASE("polynomial trade-off curve") {
    auto [a1, b1] = poly_curve<Rational>(3, Rational(3));
    CHECK(a1 == Rational(3));
    CHECK(b1 == Rational(4, 3));
    auto [a2, b2] = poly_curve<Rational>(3, Rational(4));
    CHECK(a2 == Rational(4));
    CHECK(b2 == Rational(1));
    auto [a3, b3] = poly_curve<Rational>(2, Rational(5, 2));
    CHECK(a3 == Rational(5, 2));
    CHECK(b3 == Rational(6, 5));
    CHECK_THROWS_AS(poly_curve<Rational>(2, Rational(4)), InputError);
    CHECK_THROWS_AS(poly_curve<Rational>(0, Rational(1)), InputError);
}

TEST_CASE("concave trade-off curve") {
    auto [a1, b1] = concave_curve<Rational>(Rational(3, 2));
    CHECK(a1 == Rational(3, 2));
    CHECK(b1 == Rational(3));
    auto [a2, b2] = concave_curve<Rational>(Rational(2));
    CHECK(b2 == Rational(2));
    auto [a3, b3] = concave_curve<Rational>(Rational(7, 4));
    CHECK(b3 == Rational(7, 3));
    CHECK_THROWS_AS(concave_curve<Rational>(Rational(1)), InputError);
    CHECK_THROWS_AS(concave_curve<Rational>(Rational(5, 2)), InputError);
}

TEST_CASE("mixed trade-off curve") {
    auto [a1, b1] = mixed_curve<Rational>(2, Rational(2));
    CHECK(a1 == Rational(2));
    CHECK(b1 == Rational(5, 2));
    auto [a2, b2] = mixed_curve<Rational>(2, Rational(3));
    CHECK(b2 == Rational(2));
    auto [a3, b3] = mixed_curve<Rational>(4, Rational(9, 2));
    CHECK(b3 == Rational(1) + Rational(10, 9));
    // Degree-1 mixtures are plain concave games.
    CHECK_THROWS_AS(mixed_curve<Rational>(1, Rational(3, 2)), InputError);
}

TEST_CASE("fair-share trade-off curve") {
    auto [a1, b1] = fairshare_curve(1.0, 1.0, std::exp(1.0));
    CHECK(a1 == doctest::Approx(2 * std::log(2.0)));
    CHECK(b1 == doctest::Approx(2.0));

    const double W = 50.0;
    auto [a2, b2] = fairshare_curve(std::log(W), 3.0, W);
    CHECK(b2 == doctest::Approx(2.0));

    auto [a3, b3] = fairshare_curve(1.0, 10.0, 50.0);
    CHECK(a3 == doctest::Approx(3.303).epsilon(1e-3));
    CHECK(b3 == doctest::Approx(4.912).epsilon(1e-3));

    CHECK_THROWS_AS(fairshare_curve(0.5, 1.0, 2.0), InputError);
    CHECK_THROWS_AS(fairshare_curve(1.0, 3.0, 2.0), InputError);
}

TEST_CASE("prior-work reference values") {
    CHECK(chen_roughgarden_alpha_threshold(10.0) == doctest::Approx(4.902).epsilon(1e-3));
    const double f = 2.0 * chen_roughgarden_alpha_threshold(10.0);
    auto [ra, rb] = chen_roughgarden_reference(10.0, 50.0, f);
    CHECK(ra == doctest::Approx(9.804).epsilon(1e-3));
    CHECK(rb == doctest::Approx(2.157).epsilon(1e-3));
    CHECK_THROWS_AS(chen_roughgarden_reference(10.0, 50.0, 1.0), InputError);
}

TEST_CASE("new fair-share bound dominates the prior threshold") {
    for (int i = 0; i <= 200; ++i) {
        const double w_max = 1.0 + 99.0 * i / 200.0;
        auto [alpha, beta] = fairshare_curve(1.0, w_max, w_max + 1.0);
        CHECK(alpha <= chen_roughgarden_alpha_threshold(w_max));
    }
}

TEST_CASE("curves move monotonically along lambda") {
    auto check_curve = [](const BoundCurve& curve) {
        double prev_alpha = -1, prev_beta = 1e300;
        for (int i = 0; i <= 64; ++i) {
            double lambda = curve.lambda_lo + (curve.lambda_hi - curve.lambda_lo) * i / 64;
            auto [a, b] = curve.at(lambda);
            CHECK(a >= prev_alpha - 1e-12);
            CHECK(b <= prev_beta + 1e-12);
            CHECK(a >= 1.0 - 1e-12);
            CHECK(b >= 1.0 - 1e-12);
            prev_alpha = a;
            prev_beta = b;
        }
    };
    check_curve(make_bound_curve(CostFamily::Poly, 3));
    check_curve(make_bound_curve(CostFamily::Concave));
    check_curve(make_bound_curve(CostFamily::Mixed, 2));
    check_curve(make_bound_curve(CostFamily::FairShare, 0, 4.0, 60.0));
}

TEST_CASE("curves agree with explicit composition in both backends") {
    // Rational: bit-exact. Double: within 1e-12 (asserted inside the curve
    // functions; this exercises a spread of lambdas).
    for (int d = 1; d <= 4; ++d)
        for (int step = 0; step <= 4; ++step) {
            Rational lambda = Rational(d) + Rational(step, 4);
            auto curve = poly_curve<Rational>(d, lambda);
            auto composed = compose_bounds(poly_family_params<Rational>(d, lambda));
            CHECK(curve == composed);
            poly_curve<double>(d, lambda.to_double());
        }
    for (int step = 0; step <= 4; ++step) {
        Rational lambda = Rational(3, 2) + Rational(step, 8);
        concave_curve<Rational>(lambda);
        concave_curve<double>(lambda.to_double());
        mixed_curve<Rational>(2, Rational(2) + Rational(step, 4));
        mixed_curve<double>(2, 2.0 + step / 4.0);
    }
}

TEST_CASE("gadget decomposition splits additive costs") {
    Game g({{"p1", 1}, {"p2", 2}},
           {{"e1", polynomial_cost({0, 2, 3})}, {"e2", monomial_cost(1)}},
           {{{0}, {1}}, {{0, 1}, {0}}});
    Game d = gadget_decompose(g);
    CHECK(d.n_resources() == 3);  // 2t and 3t^2, plus the untouched e2
    CHECK(d.resources()[0].id == "e1#0");
    CHECK(d.resources()[1].id == "e1#1");
    CHECK(d.resources()[2].id == "e2");
    oracle::for_each_profile(g, [&](const Profile& p) {
        for (int i = 0; i < g.n_players(); ++i)
            CHECK(player_cost<Rational>(g, p, i) == player_cost<Rational>(d, p, i));
        CHECK(social_cost<Rational>(g, p) == social_cost<Rational>(d, p));
    });
}

TEST_CASE("games without additive costs pass through unchanged") {
    Game g({{"p1", 1}}, {{"e", monomial_cost(2, 5)}, {"f", fair_share_cost(1, 1)}},
           {{{0}, {1}}});
    Game d = gadget_decompose(g);
    CHECK(d.n_resources() == 2);
    CHECK(d.resources()[0].id == "e");
    CHECK(d.resources()[1].id == "f");
}

TEST_CASE("decomposition preserves costs on random mixtures") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        InstanceSpec spec;
        spec.family = CostFamily::Mixed;
        spec.degree = 2;
        spec.seed = seed * 7;
        Game g = generate_instance(spec);
        Game d = gadget_decompose(g);
        oracle::for_each_profile(g, [&](const Profile& p) {
            CHECK(social_cost<double>(g, p) ==
                  doctest::Approx(social_cost<double>(d, p)).epsilon(1e-12));
            for (int i = 0; i < g.n_players(); ++i)
                CHECK(player_cost<double>(g, p, i) ==
                      doctest::Approx(player_cost<double>(d, p, i)).epsilon(1e-12));
        });
    }
}

TEST_CASE("family names round-trip") {
    for (auto f : {CostFamily::Poly, CostFamily::Concave, CostFamily::Mixed, CostFamily::FairShare})
        CHECK(cost_family_from_name(cost_family_name(f)) == f);
    CHECK_THROWS_AS(cost_family_from_name("nope"), InputError);
}
