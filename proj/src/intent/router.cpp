#include "pqa/intent/router.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pqa::intent {

std::string_view to_string(RouteKind kind) {
    switch (kind) {
        case RouteKind::non_decision: return "non_decision";
        case RouteKind::single: return "single";
        case RouteKind::multi: return "multi";
    }
    return "non_decision";
}

std::array<double, kDecisionIntentCount> renormalize_decision(const IntentDistribution& dist) {
    std::array<double, kDecisionIntentCount> out{};
    double mass = 0.0;
    for (std::size_t i = 0; i < kDecisionIntentCount; ++i) {
        out[i] = dist[IntentTaxonomy::decision_labels[i]];
        mass += out[i];
    }
    if (mass <= 0.0) return {};
    for (double& v : out) v /= mass;
    return out;
}

double normalized_entropy(const IntentDistribution& dist) {
    const auto p = renormalize_decision(dist);
    double h = 0.0;
    for (double v : p) {
        if (v > 0.0) h -= v * std::log(v);
    }
    return std::clamp(h / std::log(static_cast<double>(kDecisionIntentCount)), 0.0, 1.0);
}

RoutingDecision route(const IntentDistribution& dist, const PipelineConfig& config) {
    RoutingDecision decision;
    decision.renormalized_decision_probs = renormalize_decision(dist);
    decision.normalized_entropy = normalized_entropy(dist);

    if (dist[Intent::non_decision] >= config.tau_non_decision) {
        decision.kind = RouteKind::non_decision;
        return decision;
    }

    const auto& p = decision.renormalized_decision_probs;
    std::vector<std::size_t> order(kDecisionIntentCount);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return p[a] > p[b]; });

    const auto nonzero = static_cast<std::size_t>(std::count_if(p.begin(), p.end(), [](double v) { return v > 0.0; }));
    if (nonzero == 0) {
        // Zero decision mass below the gate: nothing to retrieve for.
        decision.kind = RouteKind::non_decision;
        return decision;
    }

    if (decision.normalized_entropy < config.tau_entropy) {
        decision.kind = RouteKind::single;
        decision.selected_intents.push_back(IntentTaxonomy::decision_labels[order.front()]);
        return decision;
    }

    decision.kind = RouteKind::multi;
    const std::size_t n = std::min(static_cast<std::size_t>(config.top_n_intents), nonzero);
    for (std::size_t i = 0; i < n; ++i) {
        decision.selected_intents.push_back(IntentTaxonomy::decision_labels[order[i]]);
    }
    return decision;
}

}  // namespace pqa::intent
