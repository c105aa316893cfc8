/// @file config.hpp
/// @brief Pipeline thresholds and provider selection, loaded from a JSON object.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace pqa {

/// "builtin" or an http:// endpoint URL.
using ProviderSelector = std::string;

inline constexpr std::string_view kBuiltinProvider = "builtin";

bool is_builtin(const ProviderSelector& selector);

struct PipelineConfig {
    double tau_non_decision = 0.5;  // p(non_decision) at or above which a query is routed out
    double tau_entropy = 0.5;       // normalized decision entropy at or above which top-N is used
    int top_n_intents = 3;
    int k_context = 15;
    double alpha_margin = 0.5;
    int embedding_dim = 1024;
    double tau_idk = 0.25;
    double fuzzy_threshold = 0.85;

    ProviderSelector saq_provider{kBuiltinProvider};
    ProviderSelector intent_provider{kBuiltinProvider};
    ProviderSelector embedding_provider{kBuiltinProvider};
    ProviderSelector generation_provider{kBuiltinProvider};
    /// Catalog search client URL; empty disables the search fallback.
    std::string search_client;

    /// Optional trained models for the builtin intent/embedding providers.
    std::string intent_model;
    std::string sts_model;
    /// Directory holding system.txt, metadata.json and intents/*.txt.
    std::string prompt_dir;

    std::string idk_message = "I don't have enough information to answer that.";
    std::string out_of_scope_message =
        "I can help with questions about products. For browsing or search, "
        "please use the search bar.";
    std::string clarification_message = "Which product are you asking about?";

    std::uint64_t seed = 42;

    /// Throws RangeError naming the first offending field.
    void validate() const;

    friend bool operator==(const PipelineConfig&, const PipelineConfig&) = default;
};

/// Parses a JSON object. Missing keys keep their defaults; unknown keys and
/// type mismatches raise ParseError, out-of-range values RangeError.
PipelineConfig load_config(std::string_view document);

/// Every field, in declaration order. load_config(serialize_config(c)) == c.
std::string serialize_config(const PipelineConfig& config);

}  // namespace pqa
