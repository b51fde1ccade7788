#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wcg/bounds.hpp"
#include "wcg/instances.hpp"

namespace wcg {

enum class ArithmeticMode { Exact, Float };

std::string arithmetic_mode_name(ArithmeticMode m);
ArithmeticMode arithmetic_mode_from_name(const std::string& name);

/// One lambda value of a suite grid; "lnW" resolves per game to max(1, ln W).
struct LambdaSpec {
    Rational value = 1;
    bool is_ln_total = false;

    static LambdaSpec parse(const std::string& token);
    std::string str() const;
};

struct SuiteOptions {
    CostFamily family = CostFamily::Poly;
    int degree = 2;
    std::vector<LambdaSpec> lambda_grid;
    int count = 100;
    std::uint64_t seed = 1;
    std::optional<ArithmeticMode> mode;  // default: Exact for poly, Float otherwise
    InstanceSpec prototype;              // family/cap/seed fields are overwritten per run
    InstanceCaps caps;

    ArithmeticMode effective_mode() const {
        if (mode) return *mode;
        return family == CostFamily::Poly ? ArithmeticMode::Exact : ArithmeticMode::Float;
    }
};

struct ExperimentRow {
    std::string family;
    std::string instance_id;
    std::uint64_t seed = 0;
    double lambda = 1;
    double claimed_alpha = 1, claimed_beta = 1;
    double cert_alpha = 1, cert_beta = 1;
    double phi = 0, opt = 0;
    bool pass = false;
    std::string mode;
    double runtime_ms = 0;
};

/// A failed certification with the witness instance, ready to file as a bug
/// report. The bound theorems predict none.
struct SuiteFailure {
    ExperimentRow row;
    std::string game_json;
    std::string error;  // nonempty when the run threw instead of certifying
};

struct SuiteResult {
    std::vector<ExperimentRow> rows;
    std::vector<SuiteFailure> failures;
};

/// For every (instance, lambda): build the potential from the catalog
/// parameters, take its exhaustive minimizer, certify against the family
/// curve. Row order is (instance id, lambda).
SuiteResult run_suite(const SuiteOptions& options);

// ---- reports ----------------------------------------------------------------

extern const char* const kRowsCsvHeader;

void write_rows_csv(std::ostream& out, const std::vector<ExperimentRow>& rows);
std::vector<ExperimentRow> read_rows_csv(std::istream& in);

/// Pass rates and worst certified-vs-claimed slack per (family, lambda).
std::string summarize_rows(const std::vector<ExperimentRow>& rows);

/// Plot-ready trade-off samples: lambda, alpha, beta (and the prior-work
/// reference curve for fair sharing when requested).
void write_curve_csv(std::ostream& out, const BoundCurve& curve, int samples,
                     bool include_reference = false);

std::string format_double(double v);

}  // namespace wcg
