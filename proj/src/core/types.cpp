#include "pqa/core/types.hpp"

#include <algorithm>
#include <set>

#include "pqa/core/json_io.hpp"

namespace pqa {

void ProductRecord::validate() const {
    if (product_id.empty()) throw InvalidRecord("product_id must be nonempty");
    if (canonical_name.empty()) {
        throw InvalidRecord("canonical_name must be nonempty (" + product_id + ")");
    }
    std::set<std::string_view> names;
    for (const auto& [name, value] : structured) {
        if (!names.insert(name).second) {
            throw InvalidRecord("duplicate attribute '" + name + "' in " + product_id);
        }
    }
    for (const auto& alias : aliases) {
        if (alias.empty()) throw InvalidRecord("empty alias in " + product_id);
    }
}

const std::string& ProductRecord::display_name() const {
    if (aliases.empty()) return canonical_name;
    return *std::min_element(aliases.begin(), aliases.end(),
                             [](const auto& a, const auto& b) {
                                 return a.size() < b.size();
                             });
}

Session session_append_turn(Session session, ConversationTurn turn) {
    const std::uint32_t expected =
        session.turns.empty() ? 1 : session.turns.back().turn_index + 1;
    if (turn.turn_index != expected) {
        throw IndexGap("turn_index " + std::to_string(turn.turn_index) +
                       " does not follow " + std::to_string(expected - 1) +
                       " in session " + session.session_id);
    }
    if (turn.user_query.empty()) throw InvalidRecord("user_query must be nonempty");
    session.turns.push_back(std::move(turn));
    return session;
}

namespace {

constexpr std::array<std::string_view, kIntentCount> kIntentNames = {
    "non_decision",     "authenticity",     "checkout",      "delivery_sla",
    "offers_and_discounts", "payment_options", "product_exchange",
    "product_spec",     "return_policy",    "size_and_fit",  "stock_availability",
    "variant",          "warranty",
};

}  // namespace

std::string_view to_string(Intent intent) {
    return kIntentNames[IntentTaxonomy::index(intent)];
}

std::optional<Intent> parse_intent(std::string_view label) {
    for (std::size_t i = 0; i < kIntentNames.size(); ++i) {
        if (kIntentNames[i] == label) return IntentTaxonomy::labels[i];
    }
    return std::nullopt;
}

// JSON ---------------------------------------------------------------------

void to_json(Json& j, const QaPair& v) {
    j = Json{{"question", v.question}, {"answer", v.answer}};
}

void from_json(const Json& j, QaPair& v) {
    j.at("question").get_to(v.question);
    j.at("answer").get_to(v.answer);
}

void to_json(Json& j, const ProductRecord& v) {
    Json structured = Json::object();
    for (const auto& [name, value] : v.structured) structured[name] = value;
    j = Json{{"product_id", v.product_id},
             {"canonical_name", v.canonical_name},
             {"aliases", v.aliases},
             {"structured", std::move(structured)},
             {"unstructured", v.unstructured},
             {"semi_structured", v.semi_structured}};
}

void from_json(const Json& j, ProductRecord& v) {
    j.at("product_id").get_to(v.product_id);
    j.at("canonical_name").get_to(v.canonical_name);
    v.aliases = j.value("aliases", std::vector<std::string>{});
    v.structured.clear();
    if (auto it = j.find("structured"); it != j.end()) {
        if (!it->is_object()) throw InvalidRecord("structured must be an object");
        for (const auto& [name, value] : it->items()) {
            v.structured.emplace_back(name, value.get<std::string>());
        }
    }
    v.unstructured = j.value("unstructured", std::vector<std::string>{});
    v.semi_structured = j.value("semi_structured", std::vector<QaPair>{});
}

void to_json(Json& j, const ConversationTurn& v) {
    j = Json{{"turn_index", v.turn_index},
             {"user_query", v.user_query},
             {"system_response", v.system_response},
             {"resolved_product_ids", v.resolved_product_ids},
             {"timestamp", v.timestamp_ms},
             {"standalone_query", v.standalone_query}};
}

void from_json(const Json& j, ConversationTurn& v) {
    j.at("turn_index").get_to(v.turn_index);
    j.at("user_query").get_to(v.user_query);
    v.system_response = j.value("system_response", std::string{});
    v.resolved_product_ids = j.value("resolved_product_ids", std::vector<std::string>{});
    v.timestamp_ms = j.value("timestamp", std::int64_t{0});
    v.standalone_query = j.value("standalone_query", std::string{});
}

void to_json(Json& j, const Session& v) {
    Json ctx = Json::object();
    for (const auto& [k, val] : v.user_context) ctx[k] = val;
    j = Json{{"session_id", v.session_id},
             {"user_context", std::move(ctx)},
             {"turns", v.turns},
             {"current_page_product_id", v.current_page_product_id
                                             ? Json(*v.current_page_product_id)
                                             : Json(nullptr)}};
}

void from_json(const Json& j, Session& v) {
    j.at("session_id").get_to(v.session_id);
    v.user_context.clear();
    if (auto it = j.find("user_context"); it != j.end() && !it->is_null()) {
        for (const auto& [k, val] : it->items()) v.user_context[k] = val.get<std::string>();
    }
    v.turns = j.value("turns", std::vector<ConversationTurn>{});
    v.current_page_product_id.reset();
    if (auto it = j.find("current_page_product_id"); it != j.end() && !it->is_null()) {
        v.current_page_product_id = it->get<std::string>();
    }
}

}  // namespace pqa
