#include "pqa/service/trace.hpp"

namespace pqa::service {

std::string_view to_string(Stage stage) {
    switch (stage) {
        case Stage::saq: return "saq";
        case Stage::catalog_search: return "catalog_search";
        case Stage::intent: return "intent";
        case Stage::retrieval: return "retrieval";
        case Stage::reduction: return "reduction";
        case Stage::generation: return "generation";
    }
    return "saq";
}

std::vector<Stage> TurnTrace::stages() const {
    std::vector<Stage> out;
    for (const auto& t : timings) out.push_back(t.stage);
    return out;
}

Json to_json_value(const saq::StandaloneQuery& q) {
    return {{"text", q.text},
            {"mentioned_products", q.mentioned_products},
            {"source", saq::to_string(q.source)},
            {"fallback_reason", q.fallback_reason}};
}

Json to_json_value(const catalog::ResolveResult& r) {
    Json matches = Json::array();
    for (const auto& m : r.matches) {
        matches.push_back({{"product_id", m.product_id},
                           {"matched_name", m.matched_name},
                           {"method", catalog::to_string(m.method)},
                           {"score", m.score},
                           {"mention", m.mention}});
    }
    Json misses = Json::array();
    for (const auto& m : r.misses) misses.push_back({{"mention", m.mention}, {"reason", m.reason}});
    return {{"matches", std::move(matches)}, {"misses", std::move(misses)}};
}

Json to_json_value(const intent::IntentDistribution& d) {
    Json j = Json::object();
    for (Intent i : IntentTaxonomy::labels) j[std::string(to_string(i))] = d[i];
    return j;
}

Json to_json_value(const intent::RoutingDecision& d) {
    Json selected = Json::array();
    for (Intent i : d.selected_intents) selected.push_back(to_string(i));
    Json probs = Json::object();
    for (std::size_t k = 0; k < kDecisionIntentCount; ++k) {
        probs[std::string(to_string(IntentTaxonomy::decision_labels[k]))] = d.renormalized_decision_probs[k];
    }
    return {{"kind", intent::to_string(d.kind)},
            {"selected_intents", std::move(selected)},
            {"normalized_entropy", d.normalized_entropy},
            {"renormalized_decision_probs", std::move(probs)}};
}

Json to_json_value(const retrieval::ReducedContext& c) {
    Json snippets = Json::array();
    for (const auto& s : c.snippets) {
        snippets.push_back({{"snippet_id", s.snippet_id},
                            {"product_id", s.product_id},
                            {"intent", to_string(s.intent)},
                            {"source_kind", retrieval::to_string(s.source_kind)},
                            {"text", s.text},
                            {"score", s.score}});
    }
    return {{"query_text", c.query_text}, {"snippets", std::move(snippets)}};
}

Json to_json_value(const generation::ComposedPrompt& p) {
    Json offsets = Json::array();
    for (const auto& [b, e] : p.section_offsets) offsets.push_back({b, e});
    return {{"text", p.text}, {"section_offsets", std::move(offsets)}};
}

Json to_json_value(const generation::GeneratedResponse& r) {
    return {{"kind", generation::to_string(r.kind)},
            {"text", r.text},
            {"supporting_snippet_ids", r.supporting_snippet_ids},
            {"provider", generation::to_string(r.provider)},
            {"fallback_reason", r.fallback_reason}};
}

Json to_json_value(const TurnTrace& t) {
    Json j{{"session_id", t.session_id}, {"turn_index", t.turn_index}, {"user_query", t.user_query}};
    if (t.standalone_query) j["standalone_query"] = to_json_value(*t.standalone_query);
    if (t.product_matches) j["product_matches"] = to_json_value(*t.product_matches);
    if (t.intent_distribution) j["intent_distribution"] = to_json_value(*t.intent_distribution);
    if (t.routing_decision) j["routing_decision"] = to_json_value(*t.routing_decision);
    if (t.source_bundle) {
        j["source_bundle"] = {{"per_source", t.source_bundle->per_source},
                              {"snippets", t.source_bundle->snippets},
                              {"unknown_products", t.source_bundle->unknown_products}};
    }
    if (t.reduced_context) j["reduced_context"] = to_json_value(*t.reduced_context);
    if (t.composed_prompt) j["composed_prompt"] = to_json_value(*t.composed_prompt);
    j["response"] = to_json_value(t.response);
    Json timings = Json::object();
    for (const auto& s : t.timings) timings[std::string(to_string(s.stage))] = s.ms;
    j["timings_ms"] = std::move(timings);
    j["notes"] = t.notes;
    return j;
}

}  // namespace pqa::service
