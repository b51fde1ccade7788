// forge: weighted congestion game laboratory CLI.
//
// Subcommands: gen, suite, report, goodness fit|check|scan-xi,
// potential minimize|descend|verify-lemma1|certify, bounds curve.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "wcg/catalog.hpp"
#include "wcg/experiments.hpp"
#include "wcg/game_io.hpp"

using namespace wcg;

namespace {

int exit_code = 0;

void emit(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(path);
    if (!out) throw InputError("cannot write output file '" + path + "'");
    out << text;
}

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : csv) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

Profile parse_profile(const std::string& csv, const Game& g) {
    Profile p;
    for (const auto& tok : split_list(csv)) p.push_back(std::stoi(tok));
    validate_profile(g, p);
    return p;
}

ArithmeticMode resolve_mode(const std::string& flag) {
    if (!flag.empty()) return arithmetic_mode_from_name(flag);
    if (const char* env = std::getenv("FORGE_MODE")) return arithmetic_mode_from_name(env);
    return ArithmeticMode::Float;
}

Json extended_to_json(double v) {
    if (std::isinf(v)) return "inf";
    return v;
}

template <Scalar S>
Json certificate_to_json(const Game& g, const EquilibriumCertificate<S>& cert,
                         std::optional<double> phi) {
    Json j;
    Json profile = Json::array();
    for (std::size_t i = 0; i < cert.profile.size(); ++i) {
        Json entry;
        entry["player"] = g.players()[i].id;
        entry["strategy"] = cert.profile[i];
        Json subset = Json::array();
        for (int e : g.strategy(static_cast<int>(i), cert.profile[i]))
            subset.push_back(g.resources()[e].id);
        entry["resources"] = subset;
        profile.push_back(entry);
    }
    j["profile"] = profile;
    j["alpha"] = extended_to_json(cert.alpha.to_double());
    j["beta"] = extended_to_json(cert.beta.to_double());
    j["social_cost"] = ScalarOps<S>::to_double(cert.social);
    j["opt"] = ScalarOps<S>::to_double(cert.opt);
    if (phi) j["phi"] = *phi;
    j["claimed_alpha"] = extended_to_json(cert.claimed_alpha.to_double());
    j["claimed_beta"] = extended_to_json(cert.claimed_beta.to_double());
    j["deviations_checked"] = cert.deviations_checked;
    j["passed"] = cert.passed;
    return j;
}

struct PotentialArgs {
    std::string game_path, lambda_text = "2", mode_flag, out_path;
    std::string profile_text, start_text, rule = "best";
    std::string alpha_text = "inf", beta_text = "inf";
    int degree = 0;  // 0: infer from the game
};

template <Scalar S>
Extended<S> parse_claim(const std::string& text) {
    if (text == "inf") return Extended<S>::inf();
    return Extended<S>::finite(ScalarOps<S>::from_rational(Rational::parse(text)));
}

template <Scalar S>
int run_potential(const std::string& action, const PotentialArgs& args) {
    const Game original = load_game_file(args.game_path);
    const Game game = gadget_decompose(original);
    const S lambda = ScalarOps<S>::from_rational(Rational::parse(args.lambda_text));
    std::optional<int> degree;
    if (args.degree > 0) degree = args.degree;

    if (action == "certify") {
        const Profile p = args.profile_text.empty()
                              ? Profile(original.n_players(), 0)
                              : parse_profile(args.profile_text, original);
        auto cert = certify<S>(game, p, parse_claim<S>(args.alpha_text),
                               parse_claim<S>(args.beta_text));
        emit(certificate_to_json(game, cert, std::nullopt).dump(2) + "\n", args.out_path);
        return cert.passed ? 0 : 3;
    }

    const auto config = make_catalog_config<S>(game, lambda, degree);
    const auto [claim_alpha, claim_beta] = composed_bounds(config);

    if (action == "minimize" || action == "descend") {
        Profile profile;
        S phi_value = ScalarOps<S>::from_int(0);
        Json extra;
        if (action == "minimize") {
            auto [p, phi] = minimize_potential<S>(game, config);
            profile = std::move(p);
            phi_value = phi;
        } else {
            const Profile start = args.start_text.empty()
                                      ? Profile(original.n_players(), 0)
                                      : parse_profile(args.start_text, original);
            const MoveRule rule = args.rule == "first" ? MoveRule::FirstImprovement
                                                       : MoveRule::BestImprovement;
            auto run = potential_descent<S>(game, config, start, rule);
            profile = run.profile;
            phi_value = run.potential_value;
            extra["moves"] = run.moves;
        }
        // The minimizer is certified against the composed catalog bounds; for
        // descent the beta column is informational.
        auto cert = certify<S>(game, profile, Extended<S>::finite(claim_alpha),
                               Extended<S>::finite(claim_beta));
        Json j = certificate_to_json(game, cert, ScalarOps<S>::to_double(phi_value));
        for (auto& [k, v] : extra.items()) j[k] = v;
        if (action == "descend") {
            j["beta_informational"] = true;
            j["passed"] = nullptr;  // local minima guarantee alpha only
            j["alpha_ok"] = cert.alpha.leq(cert.claimed_alpha);
        }
        emit(j.dump(2) + "\n", args.out_path);
        if (action == "minimize" && !cert.passed) return 3;
        return 0;
    }

    if (action == "verify-lemma1") {
        auto report = verify_potential_conditions<S>(game, config);
        Json j;
        j["satisfied"] = report.satisfied;
        j["tuples_checked"] = report.tuples_checked;
        if (report.any_deviation_ratio) {
            j["deviation_ratio_min"] = ScalarOps<S>::to_double(report.deviation_ratio_min);
            j["deviation_ratio_max"] = ScalarOps<S>::to_double(report.deviation_ratio_max);
        }
        if (report.any_load_ratio) {
            j["load_ratio_min"] = ScalarOps<S>::to_double(report.load_ratio_min);
            j["load_ratio_max"] = ScalarOps<S>::to_double(report.load_ratio_max);
        }
        if (report.worst) {
            Json w;
            w["violation"] = ScalarOps<S>::to_double(report.worst->amount);
            w["condition"] = potential_condition_name(report.worst->condition);
            w["resource"] = game.resources()[report.worst->resource].id;
            if (report.worst->player >= 0)
                w["player"] = game.players()[report.worst->player].id;
            Json members = Json::array();
            for (int i = 0; i < game.n_players(); ++i)
                if (report.worst->subset & (1u << i)) members.push_back(game.players()[i].id);
            w["subset"] = members;
            j["worst"] = w;
        }
        j["zero_denominators"] = report.zero_denominators.size();
        emit(j.dump(2) + "\n", args.out_path);
        return report.satisfied ? 0 : 3;
    }
    throw InputError("unknown potential action '" + action + "'");
}

Json goodness_report_to_json(const GoodnessReport& r) {
    Json j;
    j["satisfied"] = r.satisfied;
    j["worst_violation"] = r.worst_violation;
    j["condition"] = goodness_condition_name(r.condition);
    Json witness;
    witness["x"] = r.witness_x;
    if (r.witness_w) witness["w"] = *r.witness_w;
    j["witness"] = witness;
    Json grid;
    grid["x_points"] = r.x_points;
    grid["w_points"] = r.w_points;
    grid["pairs_restricted_to_total"] = true;  // only x + w <= W is scanned
    j["grid"] = grid;
    j["used_increasing_shortcut"] = r.used_increasing_shortcut;
    j["tolerance"] = r.tolerance;
    Json domain;
    domain["w_min"] = r.domain.w_min;
    domain["w_max"] = r.domain.w_max;
    domain["W"] = r.domain.total;
    j["domain"] = domain;
    return j;
}

Json params_to_json(const GoodnessParams& p) {
    Json j;
    j["alpha1"] = p.alpha1;
    j["alpha2"] = p.alpha2;
    j["beta1"] = p.beta1;
    j["beta2"] = p.beta2;
    j["xi"] = p.xi;
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"forge: a laboratory for approximate equilibria in weighted congestion games"};
    app.require_subcommand(1);

    try {
        // ---- gen ------------------------------------------------------------
        auto* gen = app.add_subcommand("gen", "generate a random instance as JSON");
        static std::string gen_family = "poly", gen_out, gen_cap = "1";
        static InstanceSpec gen_spec;
        static std::string gen_wlo = "0.5", gen_whi = "4";
        gen->add_option("--family", gen_family, "poly|concave|mixed|fairshare");
        gen->add_option("--d", gen_spec.degree, "maximum monomial degree");
        gen->add_option("--players", gen_spec.n_players, "number of players");
        gen->add_option("--resources", gen_spec.n_resources, "number of resources");
        gen->add_option("--strategies", gen_spec.strategies_per_player, "strategies per player");
        gen->add_option("--seed", gen_spec.seed, "instance seed");
        gen->add_option("--weight-min", gen_wlo, "weight grid lower bound");
        gen->add_option("--weight-max", gen_whi, "weight grid upper bound");
        gen->add_option("--weight-denom", gen_spec.weight_denominator, "weight grid denominator");
        gen->add_option("--cap", gen_cap, "fair-share plateau value");
        gen->add_option("-o,--out", gen_out, "output path (default stdout)");
        gen->callback([&] {
            gen_spec.family = cost_family_from_name(gen_family);
            gen_spec.weight_lo = Rational::parse(gen_wlo);
            gen_spec.weight_hi = Rational::parse(gen_whi);
            gen_spec.fairshare_cap = Rational::parse(gen_cap);
            emit(game_to_json(generate_instance(gen_spec)).dump(2) + "\n", gen_out);
        });

        // ---- suite ----------------------------------------------------------
        auto* suite = app.add_subcommand("suite", "run a certification suite over random games");
        static std::string suite_family = "poly", suite_grid, suite_mode, suite_out, suite_report,
            suite_fail_dir, suite_curve;
        static SuiteOptions suite_opt;
        suite->add_option("--family", suite_family, "poly|concave|mixed|fairshare")->required();
        suite->add_option("--d", suite_opt.degree, "maximum monomial degree");
        suite->add_option("--lambda-grid", suite_grid, "comma list; fairshare accepts lnW")
            ->required();
        suite->add_option("--count", suite_opt.count, "instances per lambda");
        suite->add_option("--seed", suite_opt.seed, "base seed");
        suite->add_option("--mode", suite_mode, "rational|float (default per family)");
        suite->add_option("--players", suite_opt.prototype.n_players, "players per instance");
        suite->add_option("--resources", suite_opt.prototype.n_resources, "resources per instance");
        suite->add_option("--strategies", suite_opt.prototype.strategies_per_player,
                          "strategies per player");
        suite->add_option("--out", suite_out, "rows CSV path (default stdout)");
        suite->add_option("--report", suite_report, "text summary path");
        suite->add_option("--curve-out", suite_curve, "claimed trade-off curve CSV path");
        suite->add_option("--fail-dir", suite_fail_dir, "directory for failing witness instances");
        suite->callback([&] {
            suite_opt.family = cost_family_from_name(suite_family);
            for (const auto& tok : split_list(suite_grid))
                suite_opt.lambda_grid.push_back(LambdaSpec::parse(tok));
            if (!suite_mode.empty())
                suite_opt.mode = arithmetic_mode_from_name(suite_mode);
            else if (const char* env = std::getenv("FORGE_MODE"))
                suite_opt.mode = arithmetic_mode_from_name(env);
            if (suite_opt.family == CostFamily::FairShare) {
                suite_opt.prototype.weight_lo = 1;
                suite_opt.prototype.weight_hi = 5;
            }
            auto result = run_suite(suite_opt);
            std::ostringstream csv;
            write_rows_csv(csv, result.rows);
            emit(csv.str(), suite_out);
            if (!suite_report.empty()) emit(summarize_rows(result.rows), suite_report);
            if (!suite_curve.empty()) {
                std::ostringstream curve;
                double w_max = 1, total = 1;
                if (suite_opt.family == CostFamily::FairShare) {
                    w_max = 5;
                    total = 5.0 * suite_opt.prototype.n_players;
                }
                write_curve_csv(curve,
                                make_bound_curve(suite_opt.family, suite_opt.degree, w_max, total),
                                33, suite_opt.family == CostFamily::FairShare);
                emit(curve.str(), suite_curve);
            }
            for (std::size_t k = 0; k < result.failures.size(); ++k) {
                if (suite_fail_dir.empty()) break;
                std::ofstream out(suite_fail_dir + "/failure-" +
                                  result.failures[k].row.instance_id + ".json");
                out << result.failures[k].game_json << "\n";
            }
            std::cerr << summarize_rows(result.rows);
            if (!result.failures.empty()) exit_code = 3;
        });

        // ---- report ---------------------------------------------------------
        auto* report = app.add_subcommand("report", "summarize a rows CSV");
        static std::string report_rows, report_out;
        report->add_option("--rows", report_rows, "rows CSV path")->required();
        report->add_option("-o,--out", report_out, "summary path (default stdout)");
        report->callback([&] {
            std::ifstream in(report_rows);
            if (!in) throw InputError("cannot open rows CSV '" + report_rows + "'");
            emit(summarize_rows(read_rows_csv(in)), report_out);
        });

        // ---- goodness ---------------------------------------------------------
        auto* goodness = app.add_subcommand("goodness", "fit/check goodness parameters");
        goodness->require_subcommand(1);
        static std::string good_cost_path, good_out, good_params_text, good_xi_grid = "0",
            good_objective = "alpha";
        static double good_wmin = 1, good_wmax = 1, good_total = 10, good_xi = 0;
        static int good_grid = 512;
        static bool good_shortcut = false;
        for (const char* name : {"fit", "check", "scan-xi"}) {
            auto* sub = goodness->add_subcommand(name);
            sub->add_option("--cost", good_cost_path, "cost spec JSON path")->required();
            sub->add_option("--wmin", good_wmin, "minimum weight");
            sub->add_option("--wmax", good_wmax, "maximum weight");
            sub->add_option("--total", good_total, "total weight W");
            sub->add_option("--grid", good_grid, "grid density per axis");
            sub->add_option("-o,--out", good_out, "report JSON path (default stdout)");
            if (std::string(name) == "fit") {
                sub->add_option("--xi", good_xi, "slack constant");
            } else if (std::string(name) == "check") {
                sub->add_option("--params", good_params_text, "alpha1,alpha2,beta1,beta2,xi")
                    ->required();
                sub->add_flag("--shortcut", good_shortcut,
                              "use the nondecreasing prefix condition");
            } else {
                sub->add_option("--xi-grid", good_xi_grid, "comma list of slacks");
                sub->add_option("--objective", good_objective, "alpha|beta");
            }
        }
        goodness->callback([&] {
            const CostSpec cost = load_cost_file(good_cost_path);
            const WeightDomain domain{good_wmin, good_wmax, good_total};
            const std::string action = goodness->get_subcommands().front()->get_name();
            Json j;
            if (action == "fit") {
                auto fit = fit_goodness(cost, good_xi, domain, good_grid);
                j["params"] = params_to_json(fit.params);
                j["excluded_points"] = fit.excluded_points;
                j["grid"] = {{"x_points", fit.x_points}, {"w_points", fit.w_points}};
            } else if (action == "check") {
                auto fields = split_list(good_params_text);
                if (fields.size() != 5)
                    throw InputError("--params needs alpha1,alpha2,beta1,beta2,xi");
                GoodnessParams params{std::stod(fields[0]), std::stod(fields[1]),
                                      std::stod(fields[2]), std::stod(fields[3]),
                                      std::stod(fields[4])};
                auto rep = check_goodness(cost, params, domain, good_grid, good_shortcut);
                j = goodness_report_to_json(rep);
                j["params"] = params_to_json(params);
                if (!rep.satisfied) exit_code = 3;
            } else {
                std::vector<double> grid;
                for (const auto& tok : split_list(good_xi_grid)) grid.push_back(std::stod(tok));
                auto scan = scan_xi(cost, domain, grid,
                                    good_objective == "beta" ? FitObjective::BetaRatio
                                                             : FitObjective::AlphaRatio,
                                    good_grid);
                j["xi"] = scan.xi;
                j["objective"] = good_objective;
                j["objective_value"] = scan.objective_value;
                j["params"] = params_to_json(scan.fit.params);
            }
            emit(j.dump(2) + "\n", good_out);
        });

        // ---- potential --------------------------------------------------------
        auto* potential_cmd =
            app.add_subcommand("potential", "potential minimization and certification");
        potential_cmd->require_subcommand(1);
        static PotentialArgs pot;
        for (const char* name : {"minimize", "descend", "verify-lemma1", "certify"}) {
            auto* sub = potential_cmd->add_subcommand(name);
            sub->add_option("--game", pot.game_path, "game JSON path")->required();
            sub->add_option("--mode", pot.mode_flag, "rational|float (default FORGE_MODE or float)");
            sub->add_option("-o,--out", pot.out_path, "output JSON path (default stdout)");
            const std::string n(name);
            if (n != "certify") {
                sub->add_option("--lambda", pot.lambda_text, "trade-off parameter");
                sub->add_option("--d", pot.degree, "family degree override");
            }
            if (n == "descend") {
                sub->add_option("--start", pot.start_text, "start profile, e.g. 0,1,0");
                sub->add_option("--rule", pot.rule, "best|first improvement");
            }
            if (n == "certify") {
                sub->add_option("--profile", pot.profile_text, "profile indices, e.g. 0,1,0");
                sub->add_option("--alpha", pot.alpha_text, "claimed alpha (number or inf)");
                sub->add_option("--beta", pot.beta_text, "claimed beta (number or inf)");
            }
        }
        potential_cmd->callback([&] {
            const std::string action = potential_cmd->get_subcommands().front()->get_name();
            const ArithmeticMode mode = resolve_mode(pot.mode_flag);
            exit_code = mode == ArithmeticMode::Exact ? run_potential<Rational>(action, pot)
                                                      : run_potential<double>(action, pot);
        });

        // ---- bounds -----------------------------------------------------------
        auto* bounds_cmd = app.add_subcommand("bounds", "trade-off curves");
        auto* curve_cmd = bounds_cmd->add_subcommand("curve", "emit (lambda, alpha, beta) CSV");
        static std::string curve_family = "poly", curve_out;
        static int curve_d = 2, curve_steps = 33;
        static double curve_wmax = 1, curve_total = 1, curve_lo = 0, curve_hi = 0, curve_single = 0;
        static bool curve_compare = false;
        curve_cmd->add_option("--family", curve_family, "poly|concave|mixed|fairshare")->required();
        curve_cmd->add_option("--d", curve_d, "degree for poly/mixed");
        curve_cmd->add_option("--lambda", curve_single, "emit a single curve point");
        curve_cmd->add_option("--lambda-min", curve_lo, "curve start (default per family)");
        curve_cmd->add_option("--lambda-max", curve_hi, "curve end (default per family)");
        curve_cmd->add_option("--steps", curve_steps, "number of samples");
        curve_cmd->add_option("--wmax", curve_wmax, "fair-share maximum weight");
        curve_cmd->add_option("--total", curve_total, "fair-share total weight W");
        curve_cmd->add_flag("--compare", curve_compare, "add the prior-work reference columns");
        curve_cmd->add_option("-o,--out", curve_out, "CSV path (default stdout)");
        curve_cmd->callback([&] {
            CostFamily family = cost_family_from_name(curve_family);
            if (family == CostFamily::Mixed && curve_d == 1) {
                std::cerr << "notice: degree-1 mixtures are concave games; using the concave curve\n";
                family = CostFamily::Concave;
            }
            BoundCurve curve = make_bound_curve(family, curve_d, curve_wmax, curve_total);
            if (curve_lo > 0) curve.lambda_lo = curve_lo;
            if (curve_hi > 0) curve.lambda_hi = curve_hi;
            std::ostringstream os;
            if (curve_single > 0) {
                const auto [a, b] = curve.at(curve_single);
                os << "lambda,alpha,beta\n"
                   << format_double(curve_single) << ',' << format_double(a) << ','
                   << format_double(b) << "\n";
            } else {
                write_curve_csv(os, curve, curve_steps, curve_compare);
            }
            emit(os.str(), curve_out);
        });

        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}
