#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "wcg/experiments.hpp"

using namespace wcg;

namespace {

SuiteOptions small_poly_suite() {
    SuiteOptions opt;
    opt.family = CostFamily::Poly;
    opt.degree = 1;
    opt.lambda_grid = {LambdaSpec::parse("1"), LambdaSpec::parse("2")};
    opt.count = 3;
    opt.seed = 11;
    return opt;
}

std::string csv_without_runtime(const std::vector<ExperimentRow>& rows) {
    std::ostringstream os;
    write_rows_csv(os, rows);
    std::istringstream is(os.str());
    std::string line, out;
    while (std::getline(is, line)) {
        out += line.substr(0, line.rfind(','));
        out += '\n';
    }
    return out;
}

}  // namespace

TEST_CASE("lambda grid entries parse, including lnW") {
    CHECK(LambdaSpec::parse("2.5").value == Rational(5, 2));
    CHECK_FALSE(LambdaSpec::parse("2.5").is_ln_total);
    CHECK(LambdaSpec::parse("lnW").is_ln_total);
    CHECK(LambdaSpec::parse("lnW").str() == "lnW");
    CHECK_THROWS_AS(LambdaSpec::parse("wat"), InputError);
}

TEST_CASE("small polynomial suite passes everywhere") {
    auto result = run_suite(small_poly_suite());
    REQUIRE(result.rows.size() == 6);
    CHECK(result.failures.empty());
    for (const auto& row : result.rows) {
        CHECK(row.pass);
        CHECK(row.mode == "rational");
        CHECK(row.cert_alpha <= row.claimed_alpha + 1e-12);
        CHECK(row.cert_beta <= row.claimed_beta + 1e-12);
        CHECK(row.opt > 0);
    }
    // Row order is (instance, lambda).
    CHECK(result.rows[0].instance_id == result.rows[1].instance_id);
    CHECK(result.rows[0].lambda < result.rows[1].lambda);
}

TEST_CASE("suites run in float mode when asked") {
    auto opt = small_poly_suite();
    opt.mode = ArithmeticMode::Float;
    auto result = run_suite(opt);
    for (const auto& row : result.rows) {
        CHECK(row.pass);
        CHECK(row.mode == "float");
    }
}

TEST_CASE("fair-share suites resolve lnW per game") {
    SuiteOptions opt;
    opt.family = CostFamily::FairShare;
    opt.lambda_grid = {LambdaSpec::parse("1"), LambdaSpec::parse("lnW")};
    opt.count = 4;
    opt.seed = 3;
    opt.prototype.weight_lo = 1;
    opt.prototype.weight_hi = 5;
    auto result = run_suite(opt);
    REQUIRE(result.rows.size() == 8);
    for (std::size_t i = 0; i + 1 < result.rows.size(); i += 2) {
        CHECK(result.rows[i].pass);
        CHECK(result.rows[i + 1].pass);
        CHECK(result.rows[i].lambda == 1.0);
        CHECK(result.rows[i + 1].lambda >= 1.0);  // ln W, clamped at 1
    }
}

TEST_CASE("rows survive a CSV round-trip") {
    auto result = run_suite(small_poly_suite());
    std::ostringstream os;
    write_rows_csv(os, result.rows);
    std::istringstream is(os.str());
    auto parsed = read_rows_csv(is);
    REQUIRE(parsed.size() == result.rows.size());
    for (std::size_t i = 0; i < parsed.size(); ++i) {
        CHECK(parsed[i].instance_id == result.rows[i].instance_id);
        CHECK(parsed[i].lambda == result.rows[i].lambda);
        CHECK(parsed[i].cert_alpha == result.rows[i].cert_alpha);
        CHECK(parsed[i].pass == result.rows[i].pass);
    }
    std::istringstream bad("nope\n");
    CHECK_THROWS_AS(read_rows_csv(bad), InputError);
}

TEST_CASE("identical runs emit identical CSV modulo runtime") {
    auto a = run_suite(small_poly_suite());
    auto b = run_suite(small_poly_suite());
    CHECK(csv_without_runtime(a.rows) == csv_without_runtime(b.rows));
}

TEST_CASE("summaries aggregate pass rates and slack") {
    auto result = run_suite(small_poly_suite());
    auto text = summarize_rows(result.rows);
    CHECK(text.find("poly: 6/6 passed") != std::string::npos);
    CHECK(summarize_rows({}) == "no rows\n");
}

TEST_CASE("curve CSV emits the requested samples") {
    std::ostringstream os;
    write_curve_csv(os, make_bound_curve(CostFamily::Poly, 2), 5);
    std::istringstream is(os.str());
    std::string header;
    std::getline(is, header);
    CHECK(header == "lambda,alpha,beta");
    int lines = 0;
    for (std::string line; std::getline(is, line);) ++lines;
    CHECK(lines == 5);

    std::ostringstream os2;
    write_curve_csv(os2, make_bound_curve(CostFamily::FairShare, 0, 3.0, 50.0), 4, true);
    CHECK(os2.str().find("ref_alpha") != std::string::npos);
}

TEST_CASE("option validation") {
    auto opt = small_poly_suite();
    opt.lambda_grid.clear();
    CHECK_THROWS_AS(run_suite(opt), InputError);
    opt = small_poly_suite();
    opt.count = 0;
    CHECK_THROWS_AS(run_suite(opt), InputError);
    opt = small_poly_suite();
    opt.family = CostFamily::Concave;
    opt.mode = ArithmeticMode::Exact;  // sqrt costs have no exact integral
    opt.lambda_grid = {LambdaSpec::parse("1.5")};
    auto result = run_suite(opt);  // per-instance errors become failure records
    CHECK_FALSE(result.failures.empty());
    for (const auto& f : result.failures) {
        CHECK_FALSE(f.row.pass);
        CHECK_FALSE(f.error.empty());
        CHECK_FALSE(f.game_json.empty());
    }
}
