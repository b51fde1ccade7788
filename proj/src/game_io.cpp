#include "wcg/game_io.hpp"

#include <fstream>

namespace wcg {

Rational rational_from_json(const Json& j) {
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    throw InputError("expected a numeric string (e.g. \"1.5\", \"4/3\") or an integer, got: " +
                     j.dump());
}

namespace {

Json rational_to_json(const Rational& r) { return r.str(); }

ConcaveForm concave_form_from_name(const std::string& s) {
    if (s == "sqrt") return ConcaveForm::Sqrt;
    if (s == "log1p") return ConcaveForm::Log1p;
    if (s == "affine") return ConcaveForm::Affine;
    throw InputError("unknown concave form '" + s + "'");
}

std::string concave_form_name(ConcaveForm f) {
    switch (f) {
        case ConcaveForm::Sqrt: return "sqrt";
        case ConcaveForm::Log1p: return "log1p";
        case ConcaveForm::Affine: return "affine";
    }
    return "unknown";
}

const Json& require(const Json& j, const char* field) {
    auto it = j.find(field);
    if (it == j.end())
        throw InputError(std::string("missing field '") + field + "' in: " + j.dump());
    return *it;
}

}  // namespace

Json cost_to_json(const CostSpec& cost) {
    Json j;
    j["kind"] = cost_kind_name(cost.kind());
    switch (cost.kind()) {
        case CostKind::Constant:
            j["value"] = rational_to_json(cost.as<ConstantCost>().value);
            break;
        case CostKind::Monomial:
            j["degree"] = cost.as<MonomialCost>().degree;
            j["coeff"] = rational_to_json(cost.as<MonomialCost>().coeff);
            break;
        case CostKind::Polynomial: {
            Json arr = Json::array();
            for (const auto& a : cost.as<PolynomialCost>().coeffs) arr.push_back(rational_to_json(a));
            j["coeffs"] = std::move(arr);
            break;
        }
        case CostKind::PiecewiseLinear: {
            Json arr = Json::array();
            for (const auto& p : cost.as<PiecewiseLinearCost>().points)
                arr.push_back(Json::array({rational_to_json(p.first), rational_to_json(p.second)}));
            j["points"] = std::move(arr);
            break;
        }
        case CostKind::AnalyticConcave: {
            const auto& a = cost.as<AnalyticConcaveCost>();
            j["form"] = concave_form_name(a.form);
            j["scale"] = rational_to_json(a.scale);
            j["offset"] = rational_to_json(a.offset);
            break;
        }
        case CostKind::FairShare:
            j["a"] = rational_to_json(cost.as<FairShareCost>().share);
            j["cap"] = rational_to_json(cost.as<FairShareCost>().cap);
            break;
        case CostKind::Conical: {
            Json arr = Json::array();
            for (const auto& t : cost.as<ConicalCost>().terms) {
                Json term;
                term["coeff"] = rational_to_json(t.coeff);
                term["cost"] = cost_to_json(t.cost);
                arr.push_back(std::move(term));
            }
            j["terms"] = std::move(arr);
            break;
        }
    }
    return j;
}

CostSpec cost_from_json(const Json& j) {
    if (!j.is_object()) throw InputError("cost spec must be an object: " + j.dump());
    const std::string kind = require(j, "kind").get<std::string>();
    if (kind == "constant") return constant_cost(rational_from_json(require(j, "value")));
    if (kind == "monomial")
        return monomial_cost(require(j, "degree").get<int>(),
                             rational_from_json(require(j, "coeff")));
    if (kind == "polynomial") {
        std::vector<Rational> coeffs;
        for (const auto& a : require(j, "coeffs")) coeffs.push_back(rational_from_json(a));
        return polynomial_cost(std::move(coeffs));
    }
    if (kind == "concave_pwl") {
        std::vector<std::pair<Rational, Rational>> pts;
        for (const auto& p : require(j, "points")) {
            if (!p.is_array() || p.size() != 2)
                throw InputError("concave_pwl points must be [x, value] pairs");
            pts.emplace_back(rational_from_json(p[0]), rational_from_json(p[1]));
        }
        return piecewise_linear_cost(std::move(pts));
    }
    if (kind == "concave_analytic") {
        const Json* offset = j.contains("offset") ? &j["offset"] : nullptr;
        return analytic_concave_cost(
            concave_form_from_name(require(j, "form").get<std::string>()),
            rational_from_json(require(j, "scale")),
            offset ? rational_from_json(*offset) : Rational(0));
    }
    if (kind == "fairshare") {
        const Json* cap = j.contains("cap") ? &j["cap"] : nullptr;
        return fair_share_cost(rational_from_json(require(j, "a")),
                               cap ? rational_from_json(*cap) : Rational(1));
    }
    if (kind == "conical") {
        std::vector<ConicalTerm> terms;
        for (const auto& t : require(j, "terms"))
            terms.push_back({rational_from_json(require(t, "coeff")), cost_from_json(require(t, "cost"))});
        return conical_cost(std::move(terms));
    }
    throw InputError("unknown cost kind '" + kind + "'");
}

Json game_to_json(const Game& g) {
    Json j;
    j["version"] = kGameFormatVersion;
    Json players = Json::array();
    for (const auto& p : g.players()) {
        Json e;
        e["id"] = p.id;
        e["weight"] = rational_to_json(p.weight);
        players.push_back(std::move(e));
    }
    j["players"] = std::move(players);

    Json resources = Json::array();
    for (const auto& r : g.resources()) {
        Json e;
        e["id"] = r.id;
        e["cost"] = cost_to_json(r.cost);
        resources.push_back(std::move(e));
    }
    j["resources"] = std::move(resources);

    Json strategies;
    for (int i = 0; i < g.n_players(); ++i) {
        Json list = Json::array();
        for (const auto& strat : g.strategies(i)) {
            Json subset = Json::array();
            for (int e : strat) subset.push_back(g.resources()[e].id);
            list.push_back(std::move(subset));
        }
        strategies[g.players()[i].id] = std::move(list);
    }
    j["strategies"] = std::move(strategies);
    return j;
}

Game game_from_json(const Json& j) {
    if (!j.is_object()) throw InputError("game document must be an object");
    if (require(j, "version").get<int>() != kGameFormatVersion)
        throw InputError("unsupported game format version");

    std::vector<Player> players;
    for (const auto& p : require(j, "players"))
        players.push_back({require(p, "id").get<std::string>(), rational_from_json(require(p, "weight"))});

    std::vector<Resource> resources;
    std::vector<std::string> resource_ids;
    for (const auto& r : require(j, "resources")) {
        resources.push_back({require(r, "id").get<std::string>(), cost_from_json(require(r, "cost"))});
        resource_ids.push_back(resources.back().id);
    }
    auto resource_index = [&](const std::string& id) {
        for (std::size_t e = 0; e < resource_ids.size(); ++e)
            if (resource_ids[e] == id) return static_cast<int>(e);
        throw InputError("strategy references unknown resource '" + id + "'");
    };

    const Json& strategy_map = require(j, "strategies");
    std::vector<std::vector<std::vector<int>>> strategies;
    for (const auto& p : players) {
        auto it = strategy_map.find(p.id);
        if (it == strategy_map.end())
            throw InputError("missing strategies for player '" + p.id + "'");
        std::vector<std::vector<int>> list;
        for (const auto& strat : *it) {
            std::vector<int> subset;
            for (const auto& rid : strat) subset.push_back(resource_index(rid.get<std::string>()));
            list.push_back(std::move(subset));
        }
        strategies.push_back(std::move(list));
    }
    return Game(std::move(players), std::move(resources), std::move(strategies));
}

Game load_game_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open game file '" + path + "'");
    Json j;
    in >> j;
    return game_from_json(j);
}

void save_game_file(const Game& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write game file '" + path + "'");
    out << game_to_json(g).dump(2) << "\n";
}

CostSpec load_cost_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open cost file '" + path + "'");
    Json j;
    in >> j;
    return cost_from_json(j);
}

}  // namespace wcg
