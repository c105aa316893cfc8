#pragma once

#include <chrono>
#include <string>

#include "pqa/core/config.hpp"
#include "pqa/generation/extractive.hpp"

namespace pqa::generation {

class GenerationProvider {
public:
    virtual ~GenerationProvider() = default;
    /// Completion text for the full prompt. Throws on failure.
    virtual std::string complete(const std::string& prompt) = 0;
};

/// POST {prompt} -> {text}.
class HttpGenerationProvider final : public GenerationProvider {
public:
    explicit HttpGenerationProvider(std::string url,
                                    std::chrono::milliseconds timeout = std::chrono::seconds(10));
    std::string complete(const std::string& prompt) override;

private:
    std::string url_;
    std::chrono::milliseconds timeout_;
};

/// Dispatches to `provider` (nullptr selects the extractive baseline).
/// External replies equal to or starting with config.idk_message become idk;
/// other replies are answers citing the "[snippet id]" markers they contain
/// that belong to the context, else the top-ranked snippet. Without context
/// the result is idk and the provider is not called. Provider failures fall
/// back to the extractive baseline; ProviderUnavailable if that fails too.
GeneratedResponse generate(const PromptParts& parts, GenerationProvider* provider,
                           const PipelineConfig& config, const sts::Embedder& embedder);

}  // namespace pqa::generation
