/// @file trace.hpp
/// @brief Per-turn record of every pipeline stage that ran.

#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pqa/catalog/resolver.hpp"
#include "pqa/core/json_io.hpp"
#include "pqa/generation/generator.hpp"
#include "pqa/intent/router.hpp"
#include "pqa/retrieval/reducer.hpp"

namespace pqa::service {

enum class Stage { saq, catalog_search, intent, retrieval, reduction, generation };

inline constexpr std::array<Stage, 6> kStageOrder = {
    Stage::saq,       Stage::catalog_search, Stage::intent,
    Stage::retrieval, Stage::reduction,      Stage::generation,
};

std::string_view to_string(Stage stage);

struct BundleSummary {
    std::map<std::string, std::size_t> per_source;  // source kind -> entries
    std::size_t snippets = 0;
    std::vector<std::string> unknown_products;
};

struct StageTiming {
    Stage stage = Stage::saq;
    double ms = 0.0;
};

struct TurnTrace {
    std::string session_id;
    std::uint32_t turn_index = 0;
    std::string user_query;

    std::optional<saq::StandaloneQuery> standalone_query;
    std::optional<catalog::ResolveResult> product_matches;
    std::optional<intent::IntentDistribution> intent_distribution;
    std::optional<intent::RoutingDecision> routing_decision;
    std::optional<BundleSummary> source_bundle;
    std::optional<retrieval::ReducedContext> reduced_context;
    std::optional<generation::ComposedPrompt> composed_prompt;
    generation::GeneratedResponse response;

    /// One entry per stage that ran, in pipeline order.
    std::vector<StageTiming> timings;
    /// Stage failures and fallbacks.
    std::vector<std::string> notes;

    std::vector<Stage> stages() const;
};

Json to_json_value(const saq::StandaloneQuery& q);
Json to_json_value(const catalog::ResolveResult& r);
Json to_json_value(const intent::IntentDistribution& d);
Json to_json_value(const intent::RoutingDecision& d);
Json to_json_value(const retrieval::ReducedContext& c);
Json to_json_value(const generation::ComposedPrompt& p);
Json to_json_value(const generation::GeneratedResponse& r);
Json to_json_value(const TurnTrace& t);

}  // namespace pqa::service
