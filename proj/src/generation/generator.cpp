#include "pqa/generation/generator.hpp"

#include <algorithm>

#include "pqa/core/http_endpoint.hpp"

namespace pqa::generation {
namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> cited_ids(const std::string& text, const retrieval::ReducedContext& ctx) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while ((pos = text.find('[', pos)) != std::string::npos) {
        const auto close = text.find(']', pos + 1);
        if (close == std::string::npos) break;
        const std::string id = text.substr(pos + 1, close - pos - 1);
        const bool known = std::any_of(ctx.snippets.begin(), ctx.snippets.end(),
                                       [&](const auto& s) { return s.snippet_id == id; });
        if (known && std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
        pos = close + 1;
    }
    return out;
}

GeneratedResponse external(const PromptParts& parts, GenerationProvider& provider,
                           const PipelineConfig& config) {
    const ComposedPrompt prompt = compose_prompt(parts);
    const std::string reply = trim(provider.complete(prompt.text));
    if (reply.empty()) throw Error("provider returned an empty reply");
    if (reply.starts_with(config.idk_message)) {
        return {ResponseKind::idk, config.idk_message, {}, ResponseProvider::external, {}};
    }
    auto ids = cited_ids(reply, parts.reduced_context);
    if (ids.empty()) ids.push_back(parts.reduced_context.snippets.front().snippet_id);
    return {ResponseKind::answer, reply, std::move(ids), ResponseProvider::external, {}};
}

}  // namespace

HttpGenerationProvider::HttpGenerationProvider(std::string url, std::chrono::milliseconds timeout)
    : url_(std::move(url)), timeout_(timeout) {}

std::string HttpGenerationProvider::complete(const std::string& prompt) {
    const Json reply = http_post_json(url_, {{"prompt", prompt}}, timeout_);
    auto it = reply.find("text");
    if (it == reply.end() || !it->is_string()) throw HttpError(url_ + ": reply lacks a 'text' string");
    return it->get<std::string>();
}

GeneratedResponse generate(const PromptParts& parts, GenerationProvider* provider,
                           const PipelineConfig& config, const sts::Embedder& embedder) {
    if (provider == nullptr) {
        return answer_extractive(parts, embedder, config.tau_idk, config.idk_message);
    }
    if (parts.reduced_context.snippets.empty()) {
        return {ResponseKind::idk, config.idk_message, {}, ResponseProvider::external, {}};
    }
    std::string reason;
    try {
        return external(parts, *provider, config);
    } catch (const std::exception& e) {
        reason = e.what();
    }
    try {
        auto out = answer_extractive(parts, embedder, config.tau_idk, config.idk_message);
        out.fallback_reason = reason;
        return out;
    } catch (const std::exception& e) {
        throw ProviderUnavailable("generation failed: " + reason + "; fallback: " + e.what());
    }
}

}  // namespace pqa::generation
