#pragma once

#include <optional>

#include "wcg/bounds.hpp"
#include "wcg/potential.hpp"

namespace wcg {

// ---------------------------------------------------------------------------
// Default potential parameters keyed by cost variant: every decomposed
// resource gets the closed-form goodness parameters of its family, with the
// trade-off parameter lambda chosen by the caller.
// ---------------------------------------------------------------------------

template <Scalar S>
struct CatalogContext {
    S lambda;          // trade-off parameter of the bound curves
    int degree = 1;    // monomial degree the lambda budget is tied to
    S concave_mu;      // mu assigned to concave members
    double w_min = 1;  // weight statistics, needed by fair-share resources
    double w_max = 1;
    double total = 1;
};

/// Parameters for one decomposed (single-term) resource.
template <Scalar S>
GoodnessParamsT<S> catalog_leaf_params(const CostSpec& leaf, const CatalogContext<S>& ctx) {
    switch (leaf.kind()) {
        case CostKind::Constant:
            return constant_goodness<S>();
        case CostKind::Monomial: {
            const int k = leaf.as<MonomialCost>().degree;
            if (k > ctx.degree)
                throw InputError("monomial degree " + std::to_string(k) +
                                 " exceeds the configured family degree " +
                                 std::to_string(ctx.degree));
            const S one = ScalarOps<S>::from_int(1);
            if (k == ctx.degree) return monomial_goodness<S>(k, one / ctx.lambda);
            return monomial_goodness<S>(k, one / ScalarOps<S>::from_int(k + 1));
        }
        case CostKind::PiecewiseLinear:
        case CostKind::AnalyticConcave:
            return concave_goodness<S>(ctx.concave_mu);
        case CostKind::FairShare: {
            if constexpr (ScalarOps<S>::exact) {
                throw ExactnessError("fair-share potentials involve ln; use float mode");
            } else {
                if (std::abs(ctx.w_min - 1.0) > 1e-12)
                    throw InputError("fair-share bounds need w_min = 1; rescale player weights");
                const auto& f = leaf.as<FairShareCost>();
                return fairshare_goodness(f.cap.to_double(), ctx.w_max, ctx.total);
            }
        }
        case CostKind::Polynomial:
        case CostKind::Conical:
            throw InputError("additive cost reached the catalog; run gadget_decompose first");
    }
    throw std::logic_error("catalog_leaf_params: unreachable");
}

namespace detail {

inline int max_monomial_degree(const Game& g) {
    int d = 0;
    for (const auto& r : g.resources())
        if (r.cost.is<MonomialCost>()) d = std::max(d, r.cost.as<MonomialCost>().degree);
    return d;
}

inline bool has_concave_member(const Game& g) {
    for (const auto& r : g.resources())
        if (r.cost.is<PiecewiseLinearCost>() || r.cost.is<AnalyticConcaveCost>()) return true;
    return false;
}

}  // namespace detail

/// Builds the per-resource potential configuration for a decomposed game at
/// trade-off lambda. The concave mu follows the mixture assignment
/// (d+1)/(2 lambda) when monomials of degree >= 2 are present, and
/// 1/(2(lambda-1)) for purely concave games.
template <Scalar S>
PotentialConfig<S> make_catalog_config(const Game& g, const S& lambda,
                                       std::optional<int> degree_override = std::nullopt) {
    CatalogContext<S> ctx{lambda, 1, ScalarOps<S>::from_int(1), 1, 1, 1};
    ctx.degree = degree_override.value_or(std::max(1, detail::max_monomial_degree(g)));
    if (detail::has_concave_member(g)) {
        const S one = ScalarOps<S>::from_int(1);
        const S two = ScalarOps<S>::from_int(2);
        if (detail::max_monomial_degree(g) >= 2 ||
            (degree_override && *degree_override >= 2)) {
            ctx.concave_mu = ScalarOps<S>::from_int(ctx.degree + 1) / (two * lambda);
        } else {
            ctx.concave_mu = one / (two * (lambda - one));
        }
    }
    ctx.w_min = g.min_weight().to_double();
    ctx.w_max = g.max_weight().to_double();
    ctx.total = g.total_weight().to_double();

    PotentialConfig<S> config;
    config.per_resource.reserve(g.n_resources());
    for (const auto& r : g.resources())
        config.per_resource.push_back(catalog_leaf_params<S>(r.cost, ctx));
    return config;
}

/// The (alpha, beta) guarantee composed from a configuration.
template <Scalar S>
std::pair<S, S> composed_bounds(const PotentialConfig<S>& config) {
    return compose_bounds<S>(config.per_resource);
}

}  // namespace wcg
