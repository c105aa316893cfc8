/// @file router.hpp
/// @brief Entropy-based dispatch over decision intents.

#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "pqa/core/config.hpp"
#include "pqa/intent/distribution.hpp"

namespace pqa::intent {

enum class RouteKind { non_decision, single, multi };

std::string_view to_string(RouteKind kind);

struct RoutingDecision {
    RouteKind kind = RouteKind::non_decision;
    /// Descending probability, taxonomy order on ties.
    std::vector<Intent> selected_intents;
    double normalized_entropy = 0.0;
    /// Decision-label probabilities renormalized to sum 1 (all zero when the
    /// decision mass is zero), in IntentTaxonomy::decision_labels order.
    std::array<double, kDecisionIntentCount> renormalized_decision_probs{};
};

/// Decision probabilities renormalized to sum 1, or all zero.
std::array<double, kDecisionIntentCount> renormalize_decision(const IntentDistribution& dist);

/// Shannon entropy of the renormalized decision probabilities divided by ln 12.
/// 0 ln 0 is 0; zero decision mass gives 0.
double normalized_entropy(const IntentDistribution& dist);

/// Non-decision gate first (p >= tau_non_decision), then a single intent when
/// the normalized entropy is below tau_entropy, else the top
/// min(top_n_intents, nonzero count) decision intents.
RoutingDecision route(const IntentDistribution& dist, const PipelineConfig& config);

}  // namespace pqa::intent
