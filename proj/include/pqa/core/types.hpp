/// @file types.hpp
/// @brief Shared data model: catalog products, sessions, and the intent taxonomy.
///
/// Everything here is a plain value type. Operations that "modify" a session
/// return a new value, so snapshots can be shared freely between threads.

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pqa/core/error.hpp"

namespace pqa {

class InvalidRecord : public Error {
public:
    using Error::Error;
};

struct QaPair {
    std::string question;
    std::string answer;

    friend bool operator==(const QaPair&, const QaPair&) = default;
};

/// One catalog product: structured attributes, free-text passages (reviews)
/// and question/answer entries.
struct ProductRecord {
    std::string product_id;
    std::string canonical_name;
    /// Short surface forms shoppers use ("iPhone 13"). Matched like the canonical name.
    std::vector<std::string> aliases;
    std::vector<std::pair<std::string, std::string>> structured;
    std::vector<std::string> unstructured;
    std::vector<QaPair> semi_structured;

    /// Throws InvalidRecord on an empty id/name or a repeated attribute name.
    void validate() const;

    /// Shortest alias, or the canonical name when there are none.
    const std::string& display_name() const;

    friend bool operator==(const ProductRecord&, const ProductRecord&) = default;
};

/// Profile and preference pairs; may be empty.
using UserContext = std::map<std::string, std::string>;

struct ConversationTurn {
    std::uint32_t turn_index = 0;
    std::string user_query;
    std::string system_response;
    std::vector<std::string> resolved_product_ids;
    std::int64_t timestamp_ms = 0;
    /// The rewritten query produced for this turn (empty when rewriting failed).
    std::string standalone_query;

    friend bool operator==(const ConversationTurn&, const ConversationTurn&) = default;
};

struct Session {
    std::string session_id;
    UserContext user_context;
    std::vector<ConversationTurn> turns;
    std::optional<std::string> current_page_product_id;

    friend bool operator==(const Session&, const Session&) = default;
};

/// Returns `session` with `turn` appended. The new index must be last + 1
/// (1 for an empty session) or IndexGap is thrown.
Session session_append_turn(Session session, ConversationTurn turn);

// Intent taxonomy ---------------------------------------------------------

enum class Intent : std::uint8_t {
    non_decision,
    authenticity,
    checkout,
    delivery_sla,
    offers_and_discounts,
    payment_options,
    product_exchange,
    product_spec,
    return_policy,
    size_and_fit,
    stock_availability,
    variant,
    warranty,
};

inline constexpr std::size_t kIntentCount = 13;
inline constexpr std::size_t kDecisionIntentCount = 12;

struct IntentTaxonomy {
    static constexpr std::array<Intent, kIntentCount> labels = {
        Intent::non_decision,       Intent::authenticity,   Intent::checkout,
        Intent::delivery_sla,       Intent::offers_and_discounts,
        Intent::payment_options,    Intent::product_exchange,
        Intent::product_spec,       Intent::return_policy,  Intent::size_and_fit,
        Intent::stock_availability, Intent::variant,        Intent::warranty,
    };

    static constexpr std::array<Intent, kDecisionIntentCount> decision_labels = {
        Intent::authenticity,       Intent::checkout,       Intent::delivery_sla,
        Intent::offers_and_discounts, Intent::payment_options,
        Intent::product_exchange,   Intent::product_spec,   Intent::return_policy,
        Intent::size_and_fit,       Intent::stock_availability,
        Intent::variant,            Intent::warranty,
    };

    static constexpr bool is_decision(Intent i) { return i != Intent::non_decision; }
    static constexpr std::size_t index(Intent i) { return static_cast<std::size_t>(i); }
};

std::string_view to_string(Intent intent);
std::optional<Intent> parse_intent(std::string_view label);

}  // namespace pqa
