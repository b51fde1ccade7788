#include "wcg/bounds.hpp"

#include <cmath>

namespace wcg {

Game gadget_decompose(const Game& g) {
    std::vector<Resource> resources;
    std::vector<std::vector<int>> replacement(g.n_resources());
    for (int e = 0; e < g.n_resources(); ++e) {
        const auto& r = g.resources()[e];
        auto leaves = decompose_cost(r.cost);
        if (leaves.size() == 1) {
            replacement[e].push_back(static_cast<int>(resources.size()));
            resources.push_back({r.id, std::move(leaves.front())});
            continue;
        }
        for (std::size_t j = 0; j < leaves.size(); ++j) {
            replacement[e].push_back(static_cast<int>(resources.size()));
            resources.push_back({r.id + "#" + std::to_string(j), std::move(leaves[j])});
        }
    }

    std::vector<std::vector<std::vector<int>>> strategies(g.n_players());
    for (int i = 0; i < g.n_players(); ++i) {
        strategies[i].reserve(g.strategies(i).size());
        for (const auto& strat : g.strategies(i)) {
            std::vector<int> mapped;
            for (int e : strat) mapped.insert(mapped.end(), replacement[e].begin(), replacement[e].end());
            strategies[i].push_back(std::move(mapped));
        }
    }
    return Game(g.players(), std::move(resources), std::move(strategies));
}

std::pair<double, double> fairshare_curve(double lambda, double w_max, double W) {
    if (lambda < 1) throw InputError("fairshare_curve needs lambda >= 1");
    if (w_max < 1 || W < w_max) throw InputError("fairshare_curve needs 1 <= w_max <= W");
    const auto params = fairshare_goodness(lambda, w_max, W);
    return {params.alpha2 / params.alpha1, 1.0 + std::log(W) / lambda};
}

double chen_roughgarden_alpha_threshold(double w_max) {
    if (w_max < 1) throw InputError("reference threshold needs w_max >= 1");
    return std::log2(std::exp(1.0) * (1.0 + w_max));
}

std::pair<double, double> chen_roughgarden_reference(double w_max, double W, double f) {
    if (W < w_max) throw InputError("reference curve needs W >= w_max");
    if (f < 2.0 * chen_roughgarden_alpha_threshold(w_max))
        throw InputError("reference curve needs f >= 2*log2[e(1+w_max)]");
    return {f, 1.0 + 2.0 * std::log2(1.0 + W) / f};
}

std::string cost_family_name(CostFamily f) {
    switch (f) {
        case CostFamily::Poly: return "poly";
        case CostFamily::Concave: return "concave";
        case CostFamily::Mixed: return "mixed";
        case CostFamily::FairShare: return "fairshare";
    }
    return "unknown";
}

CostFamily cost_family_from_name(const std::string& name) {
    if (name == "poly") return CostFamily::Poly;
    if (name == "concave") return CostFamily::Concave;
    if (name == "mixed") return CostFamily::Mixed;
    if (name == "fairshare") return CostFamily::FairShare;
    throw InputError("unknown cost family '" + name + "'");
}

std::pair<double, double> BoundCurve::at(double lambda) const {
    switch (family) {
        case CostFamily::Poly: return poly_curve<double>(degree, lambda);
        case CostFamily::Concave: return concave_curve<double>(lambda);
        case CostFamily::Mixed: return mixed_curve<double>(degree, lambda);
        case CostFamily::FairShare: return fairshare_curve(lambda, w_max, total);
    }
    throw std::logic_error("BoundCurve::at: unreachable");
}

BoundCurve make_bound_curve(CostFamily family, int degree, double w_max, double total) {
    BoundCurve c;
    c.family = family;
    c.degree = degree;
    c.w_max = w_max;
    c.total = total;
    switch (family) {
        case CostFamily::Poly:
        case CostFamily::Mixed:
            c.lambda_lo = degree;
            c.lambda_hi = degree + 1;
            break;
        case CostFamily::Concave:
            c.lambda_lo = 1.5;
            c.lambda_hi = 2.0;
            break;
        case CostFamily::FairShare:
            c.lambda_lo = 1.0;
            c.lambda_hi = std::max(1.0, std::log(total));
            break;
    }
    return c;
}

}  // namespace wcg
