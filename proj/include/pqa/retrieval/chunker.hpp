#pragma once

#include <string>
#include <vector>

#include "pqa/retrieval/orchestrator.hpp"

namespace pqa::retrieval {

/// Snippet token budget, counted in normalized tokens.
inline constexpr std::size_t kMaxChunkTokens = 60;

struct ContextSnippet {
    /// "<product>:<intent>:<source kind>:<ordinal>", ordinal zero-padded to 4 digits.
    std::string snippet_id;
    std::string product_id;
    Intent intent = Intent::product_spec;
    SourceKind source_kind = SourceKind::structured;
    std::string text;
    double score = 0.0;
};

/// Sentences of `text`, split after '.', '!' or '?' followed by white space or end.
std::vector<std::string> split_sentences(const std::string& text);

/// Greedy packing of whole sentences into pieces of at most kMaxChunkTokens
/// tokens. A single sentence longer than the budget is cut at word boundaries.
std::vector<std::string> pack_sentences(const std::string& text);

/// Attribute -> "name: value"; Q/A -> "Q: question A: answer"; free text and
/// policy text -> packed sentence groups. Unscored, in bundle order.
std::vector<ContextSnippet> chunk(const SourceBundle& bundle);

}  // namespace pqa::retrieval
