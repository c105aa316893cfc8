#pragma once

#include <nlohmann/json.hpp>

#include "pqa/core/types.hpp"

namespace pqa {

/// Insertion-ordered JSON; keeps serialized output byte-stable and preserves
/// attribute order of product records.
using Json = nlohmann::ordered_json;

void to_json(Json& j, const QaPair& v);
void from_json(const Json& j, QaPair& v);
void to_json(Json& j, const ProductRecord& v);
void from_json(const Json& j, ProductRecord& v);
void to_json(Json& j, const ConversationTurn& v);
void from_json(const Json& j, ConversationTurn& v);
void to_json(Json& j, const Session& v);
void from_json(const Json& j, Session& v);

}  // namespace pqa
