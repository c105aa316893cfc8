#pragma once

#include <string>
#include <vector>

#include "pqa/retrieval/chunker.hpp"
#include "pqa/saq/rewriter.hpp"
#include "pqa/sts/embedding.hpp"

namespace pqa::retrieval {

struct ReducedContext {
    std::string query_text;
    /// Ordered by (score desc, snippet_id asc); at most k entries.
    std::vector<ContextSnippet> snippets;
};

/// Orders snippets by (score desc, snippet_id asc).
bool ranks_before(const ContextSnippet& a, const ContextSnippet& b);

/// Scores each snippet by cosine against the query embedding and keeps the top k.
/// Throws Error when k is 0.
ReducedContext reduce(const std::string& query_text, std::vector<ContextSnippet> snippets,
                      const sts::Embedder& embedder, std::size_t k);

inline ReducedContext reduce(const saq::StandaloneQuery& query, std::vector<ContextSnippet> snippets,
                             const sts::Embedder& embedder, std::size_t k) {
    return reduce(query.text, std::move(snippets), embedder, k);
}

}  // namespace pqa::retrieval
