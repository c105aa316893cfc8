#include "pqa/generation/extractive.hpp"

#include <optional>

namespace pqa::generation {
namespace {

GeneratedResponse idk(const std::string& message) {
    return {ResponseKind::idk, message, {}, ResponseProvider::builtin_extractive, {}};
}

struct Best {
    const retrieval::ContextSnippet* snippet = nullptr;
    double score = 0.0;
};

/// Highest cosine among snippets of `intent` (all snippets when absent);
/// earlier rank wins ties.
Best best_for(const PromptParts& parts, const std::vector<double>& scores,
              std::optional<Intent> intent) {
    Best best;
    const auto& snippets = parts.reduced_context.snippets;
    for (std::size_t i = 0; i < snippets.size(); ++i) {
        if (intent && snippets[i].intent != *intent) continue;
        if (best.snippet == nullptr || scores[i] > best.score) best = {&snippets[i], scores[i]};
    }
    return best;
}

std::string clause(const PromptParts& parts, const retrieval::ContextSnippet& s) {
    const std::string* title = parts.title_of(s.product_id);
    return (title ? *title : s.product_id) + ": " + s.text;
}

}  // namespace

std::string_view to_string(ResponseKind kind) {
    switch (kind) {
        case ResponseKind::answer: return "answer";
        case ResponseKind::idk: return "idk";
        case ResponseKind::out_of_scope: return "out_of_scope";
        case ResponseKind::clarification: return "clarification";
    }
    return "idk";
}

std::string_view to_string(ResponseProvider provider) {
    return provider == ResponseProvider::external ? "external" : "builtin_extractive";
}

GeneratedResponse answer_extractive(const PromptParts& parts, const sts::Embedder& embedder,
                                    double tau_idk, const std::string& idk_message) {
    const auto& snippets = parts.reduced_context.snippets;
    if (snippets.empty()) return idk(idk_message);

    const auto q = embedder.embed(parts.standalone_query.text);
    std::vector<double> scores;
    scores.reserve(snippets.size());
    for (const auto& s : snippets) scores.push_back(sts::cosine(q, embedder.embed(s.text)));

    if (parts.routed_intents.size() <= 1) {
        const Best best = best_for(parts, scores, std::nullopt);
        if (best.score < tau_idk) return idk(idk_message);
        return {ResponseKind::answer, clause(parts, *best.snippet), {best.snippet->snippet_id},
                ResponseProvider::builtin_extractive, {}};
    }

    GeneratedResponse out{ResponseKind::answer, "", {}, ResponseProvider::builtin_extractive, {}};
    for (Intent intent : parts.routed_intents) {
        const Best best = best_for(parts, scores, intent);
        if (!out.text.empty()) out.text += '\n';
        if (best.snippet != nullptr && best.score >= tau_idk) {
            out.text += clause(parts, *best.snippet);
            out.supporting_snippet_ids.push_back(best.snippet->snippet_id);
        } else {
            out.text += std::string(to_string(intent)) + ": " + idk_message;
        }
    }
    if (out.supporting_snippet_ids.empty()) return idk(idk_message);
    return out;
}

}  // namespace pqa::generation
