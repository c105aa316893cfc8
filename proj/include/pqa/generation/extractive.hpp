#pragma once

#include <string>
#include <vector>

#include "pqa/generation/prompt.hpp"
#include "pqa/sts/embedding.hpp"

namespace pqa::generation {

enum class ResponseKind { answer, idk, out_of_scope, clarification };
enum class ResponseProvider { builtin_extractive, external };

std::string_view to_string(ResponseKind kind);
std::string_view to_string(ResponseProvider provider);

struct GeneratedResponse {
    ResponseKind kind = ResponseKind::idk;
    std::string text;
    /// Empty unless kind == answer.
    std::vector<std::string> supporting_snippet_ids;
    ResponseProvider provider = ResponseProvider::builtin_extractive;
    /// Set when an external provider failed and the extractive path answered.
    std::string fallback_reason;
};

/// Picks, per routed intent, the snippet closest to the standalone query.
/// One intent: "<title>: <snippet>" or idk when the best cosine is below tau_idk.
/// Several intents: one line per intent, each either "<title>: <snippet>" or
/// "<intent>: <idk_message>"; idk overall when no intent is supported.
GeneratedResponse answer_extractive(const PromptParts& parts, const sts::Embedder& embedder,
                                    double tau_idk, const std::string& idk_message);

}  // namespace pqa::generation
