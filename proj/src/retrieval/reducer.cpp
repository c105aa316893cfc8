#include "pqa/retrieval/reducer.hpp"

#include <algorithm>

namespace pqa::retrieval {

bool ranks_before(const ContextSnippet& a, const ContextSnippet& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.snippet_id < b.snippet_id;
}

ReducedContext reduce(const std::string& query_text, std::vector<ContextSnippet> snippets,
                      const sts::Embedder& embedder, std::size_t k) {
    if (k == 0) throw Error("k must be at least 1");
    const auto q = embedder.embed(query_text);
    std::vector<std::string> texts;
    texts.reserve(snippets.size());
    for (const auto& s : snippets) texts.push_back(s.text);
    const auto vectors = embedder.embed_batch(texts);
    for (std::size_t i = 0; i < snippets.size(); ++i) snippets[i].score = sts::cosine(q, vectors[i]);

    const std::size_t keep = std::min(k, snippets.size());
    std::partial_sort(snippets.begin(), snippets.begin() + static_cast<std::ptrdiff_t>(keep),
                      snippets.end(), ranks_before);
    snippets.resize(keep);
    return {query_text, std::move(snippets)};
}

}  // namespace pqa::retrieval
