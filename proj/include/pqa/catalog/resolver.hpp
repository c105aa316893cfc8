/// @file resolver.hpp
/// @brief Cascaded product resolution: exact history match, fuzzy history,
/// fuzzy catalog, then salient-name search.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pqa/catalog/index.hpp"
#include "pqa/catalog/search_client.hpp"
#include "pqa/saq/rewriter.hpp"

namespace pqa::catalog {

enum class MatchMethod { exact_history, fuzzy_history, fuzzy_catalog, search_fallback };

std::string_view to_string(MatchMethod method);

struct ProductMatch {
    std::string product_id;
    std::string matched_name;  // canonical name
    MatchMethod method = MatchMethod::exact_history;
    double score = 1.0;
    std::string mention;       // the text that was resolved
};

struct ResolveMiss {
    std::string mention;
    std::string reason;
};

struct ResolveResult {
    std::vector<ProductMatch> matches;  // one per distinct product, mention order
    std::vector<ResolveMiss> misses;
};

inline constexpr std::size_t kMaxFuzzyCandidates = 256;

/// Longest contiguous token n-gram of `text` whose tokens all occur in the
/// catalog vocabulary; leftmost on ties. Empty when no token qualifies.
std::string salient_name(std::string_view text, const CatalogIndex& index);

/// Product ids seen in the session, most recent first (turn resolutions and
/// names in turn texts, newest turn first, then the page product).
std::vector<std::string> history_products(const Session& session, const CatalogIndex& index);

/// Resolves each mention of `query` (or its salient name when it has none).
/// Search-client failures are recorded as misses, never thrown.
ResolveResult resolve(const saq::StandaloneQuery& query, const Session& session,
                      const CatalogIndex& index, SearchClient* search_client,
                      double fuzzy_threshold);

}  // namespace pqa::catalog
