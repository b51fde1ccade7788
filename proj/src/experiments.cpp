#include "wcg/experiments.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "wcg/catalog.hpp"
#include "wcg/game_io.hpp"
#include "wcg/potential.hpp"

namespace wcg {

std::string arithmetic_mode_name(ArithmeticMode m) {
    return m == ArithmeticMode::Exact ? "rational" : "float";
}

ArithmeticMode arithmetic_mode_from_name(const std::string& name) {
    if (name == "rational" || name == "exact") return ArithmeticMode::Exact;
    if (name == "float") return ArithmeticMode::Float;
    throw InputError("unknown arithmetic mode '" + name + "' (use rational|float)");
}

LambdaSpec LambdaSpec::parse(const std::string& token) {
    if (token == "lnW") return {1, true};
    return {Rational::parse(token), false};
}

std::string LambdaSpec::str() const { return is_ln_total ? "lnW" : value.str(); }

std::string format_double(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) return "nan";
    return std::string(buf, end);
}

namespace {

struct ResolvedLambda {
    Rational value;   // exact in rational mode; dyadic image of the double otherwise
    double as_double;
};

ResolvedLambda resolve_lambda(const LambdaSpec& spec, const Game& g) {
    if (!spec.is_ln_total) return {spec.value, spec.value.to_double()};
    const double ln_total = std::max(1.0, std::log(g.total_weight().to_double()));
    return {Rational::from_double(ln_total), ln_total};
}

std::pair<double, double> claimed_curve(const SuiteOptions& opt, double lambda, const Game& g) {
    switch (opt.family) {
        case CostFamily::Poly: return poly_curve<double>(opt.degree, lambda);
        case CostFamily::Concave: return concave_curve<double>(lambda);
        case CostFamily::Mixed: return mixed_curve<double>(opt.degree, lambda);
        case CostFamily::FairShare:
            return fairshare_curve(lambda, g.max_weight().to_double(),
                                   g.total_weight().to_double());
    }
    throw std::logic_error("claimed_curve: unreachable");
}

template <Scalar S>
void certify_minimizer(const SuiteOptions& opt, const Game& decomposed, const ResolvedLambda& lambda,
                       const std::pair<double, double>& claimed, ExperimentRow& row) {
    const S lambda_s = ScalarOps<S>::from_rational(lambda.value);
    const auto config = make_catalog_config<S>(decomposed, lambda_s, opt.degree);
    const auto [minimizer, phi] = minimize_potential<S>(decomposed, config, opt.caps.max_profiles);

    Extended<S> claim_alpha, claim_beta;
    if constexpr (ScalarOps<S>::exact) {
        // Keep the claim exact where the curve is rational.
        std::pair<Rational, Rational> exact_claim;
        switch (opt.family) {
            case CostFamily::Poly: exact_claim = poly_curve<Rational>(opt.degree, lambda.value); break;
            case CostFamily::Concave: exact_claim = concave_curve<Rational>(lambda.value); break;
            case CostFamily::Mixed: exact_claim = mixed_curve<Rational>(opt.degree, lambda.value); break;
            case CostFamily::FairShare:
                throw InputError("fair-share suites need float mode");
        }
        claim_alpha = Extended<S>::finite(exact_claim.first);
        claim_beta = Extended<S>::finite(exact_claim.second);
    } else {
        claim_alpha = Extended<S>::finite(claimed.first);
        claim_beta = Extended<S>::finite(claimed.second);
    }

    const auto cert = certify<S>(decomposed, minimizer, claim_alpha, claim_beta,
                                 ScalarOps<S>::default_tolerance(), opt.caps.max_profiles);
    row.cert_alpha = cert.alpha.to_double();
    row.cert_beta = cert.beta.to_double();
    row.phi = ScalarOps<S>::to_double(phi);
    row.opt = ScalarOps<S>::to_double(cert.opt);
    row.pass = cert.passed;
}

}  // namespace

SuiteResult run_suite(const SuiteOptions& options) {
    if (options.lambda_grid.empty()) throw InputError("suite needs a nonempty lambda grid");
    if (options.count < 1) throw InputError("suite needs count >= 1");
    const ArithmeticMode mode = options.effective_mode();

    SuiteResult result;
    for (int i = 0; i < options.count; ++i) {
        for (std::size_t li = 0; li < options.lambda_grid.size(); ++li) {
            const auto started = std::chrono::steady_clock::now();

            InstanceSpec spec = options.prototype;
            spec.family = options.family;
            spec.degree = options.degree;
            spec.seed = options.seed + static_cast<std::uint64_t>(i);
            if (options.family == CostFamily::FairShare) {
                // The plateau is the trade-off parameter; resolve lnW against
                // the weights drawn for this seed (they do not depend on it).
                spec.fairshare_cap = 1;
                if (options.lambda_grid[li].is_ln_total) {
                    const Game probe = generate_instance(spec, options.caps);
                    spec.fairshare_cap = resolve_lambda(options.lambda_grid[li], probe).value;
                } else {
                    spec.fairshare_cap = options.lambda_grid[li].value;
                }
            }

            const Game game = generate_instance(spec, options.caps);
            const Game decomposed = gadget_decompose(game);
            const ResolvedLambda lambda = resolve_lambda(options.lambda_grid[li], game);

            ExperimentRow row;
            row.family = cost_family_name(options.family);
            row.instance_id = row.family + "-d" + std::to_string(options.degree) + "-i" +
                              std::to_string(i);
            row.seed = spec.seed;
            row.lambda = lambda.as_double;
            row.mode = arithmetic_mode_name(mode);
            std::string error;
            try {
                const auto claimed = claimed_curve(options, lambda.as_double, game);
                row.claimed_alpha = claimed.first;
                row.claimed_beta = claimed.second;

                if (mode == ArithmeticMode::Exact) {
                    for (const auto& r : decomposed.resources())
                        if (!rational_closed(r.cost))
                            throw InputError(
                                "rational mode needs rational-closed costs (resource '" + r.id +
                                "'); use float mode");
                    certify_minimizer<Rational>(options, decomposed, lambda, claimed, row);
                } else {
                    certify_minimizer<double>(options, decomposed, lambda, claimed, row);
                }

                // A pass must never hide a certified factor above the claim.
                if (row.pass && (row.cert_alpha > row.claimed_alpha + 1e-9 ||
                                 row.cert_beta > row.claimed_beta + 1e-9))
                    throw std::logic_error(
                        "suite invariant violated: pass with certified > claimed");
            } catch (const std::exception& e) {
                // Individual failures are data; the suite keeps going.
                row.pass = false;
                error = e.what();
            }

            row.runtime_ms = std::chrono::duration<double, std::milli>(
                                 std::chrono::steady_clock::now() - started)
                                 .count();
            if (!row.pass)
                result.failures.push_back({row, game_to_json(game).dump(2), error});
            result.rows.push_back(std::move(row));
        }
    }
    return result;
}

const char* const kRowsCsvHeader =
    "family,instance_id,seed,lambda,claimed_alpha,claimed_beta,cert_alpha,cert_beta,phi,opt,pass,"
    "mode,runtime_ms";

void write_rows_csv(std::ostream& out, const std::vector<ExperimentRow>& rows) {
    out << kRowsCsvHeader << "\n";
    for (const auto& r : rows) {
        out << r.family << ',' << r.instance_id << ',' << r.seed << ',' << format_double(r.lambda)
            << ',' << format_double(r.claimed_alpha) << ',' << format_double(r.claimed_beta) << ','
            << format_double(r.cert_alpha) << ',' << format_double(r.cert_beta) << ','
            << format_double(r.phi) << ',' << format_double(r.opt) << ',' << (r.pass ? 1 : 0)
            << ',' << r.mode << ',' << format_double(r.runtime_ms) << "\n";
    }
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    fields.push_back(cur);
    return fields;
}

double parse_double_field(const std::string& s) {
    double v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        throw InputError("bad numeric CSV field '" + s + "'");
    return v;
}

}  // namespace

std::vector<ExperimentRow> read_rows_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kRowsCsvHeader)
        throw InputError("rows CSV missing the expected header");
    std::vector<ExperimentRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto f = split_csv_line(line);
        if (f.size() != 13) throw InputError("rows CSV line with wrong field count: " + line);
        ExperimentRow r;
        r.family = f[0];
        r.instance_id = f[1];
        r.seed = std::stoull(f[2]);
        r.lambda = parse_double_field(f[3]);
        r.claimed_alpha = parse_double_field(f[4]);
        r.claimed_beta = parse_double_field(f[5]);
        r.cert_alpha = parse_double_field(f[6]);
        r.cert_beta = parse_double_field(f[7]);
        r.phi = parse_double_field(f[8]);
        r.opt = parse_double_field(f[9]);
        r.pass = f[10] == "1";
        r.mode = f[11];
        r.runtime_ms = parse_double_field(f[12]);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string summarize_rows(const std::vector<ExperimentRow>& rows) {
    if (rows.empty()) return "no rows\n";
    struct Bucket {
        int total = 0, passed = 0;
        double worst_alpha_slack = -std::numeric_limits<double>::infinity();
        double worst_beta_slack = -std::numeric_limits<double>::infinity();
    };
    std::map<std::string, Bucket> by_family;
    for (const auto& r : rows) {
        auto& b = by_family[r.family];
        ++b.total;
        if (r.pass) ++b.passed;
        b.worst_alpha_slack = std::max(b.worst_alpha_slack, r.cert_alpha - r.claimed_alpha);
        b.worst_beta_slack = std::max(b.worst_beta_slack, r.cert_beta - r.claimed_beta);
    }
    std::ostringstream out;
    out << "suite summary (" << rows.size() << " rows)\n";
    for (const auto& [family, b] : by_family) {
        out << "  " << family << ": " << b.passed << "/" << b.total << " passed"
            << ", worst alpha slack " << format_double(b.worst_alpha_slack)
            << ", worst beta slack " << format_double(b.worst_beta_slack) << "\n";
    }
    return out.str();
}

void write_curve_csv(std::ostream& out, const BoundCurve& curve, int samples,
                     bool include_reference) {
    if (samples < 2) throw InputError("curve CSV needs at least 2 samples");
    out << "lambda,alpha,beta";
    if (include_reference) out << ",ref_alpha,ref_beta";
    out << "\n";
    for (int i = 0; i < samples; ++i) {
        const double lambda =
            curve.lambda_lo + (curve.lambda_hi - curve.lambda_lo) * i / (samples - 1);
        const auto [alpha, beta] = curve.at(lambda);
        out << format_double(lambda) << ',' << format_double(alpha) << ',' << format_double(beta);
        if (include_reference) {
            // Map our alpha onto the earlier bound's feasible range.
            const double f = std::max(alpha, 2.0 * chen_roughgarden_alpha_threshold(curve.w_max));
            const auto ref = chen_roughgarden_reference(curve.w_max, curve.total, f);
            out << ',' << format_double(ref.first) << ',' << format_double(ref.second);
        }
        out << "\n";
    }
}

}  // namespace wcg
