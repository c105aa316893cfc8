/// @file pipeline.hpp
/// @brief One conversational turn: rewrite, resolve, route, retrieve, reduce, generate.

#pragma once

#include <memory>
#include <mutex>
#include <string>

#include "pqa/catalog/index.hpp"
#include "pqa/catalog/search_client.hpp"
#include "pqa/core/config.hpp"
#include "pqa/generation/generator.hpp"
#include "pqa/generation/prompt_library.hpp"
#include "pqa/intent/provider.hpp"
#include "pqa/retrieval/policy_store.hpp"
#include "pqa/saq/provider.hpp"
#include "pqa/service/ingest.hpp"
#include "pqa/service/session_store.hpp"
#include "pqa/service/trace.hpp"
#include "pqa/sts/embedding.hpp"

namespace pqa::service {

/// Null members select the builtin behaviour (rule-based rewriting, keyword
/// intents, hashed embeddings, extractive answers, no search fallback).
struct Providers {
    std::unique_ptr<saq::RewriteProvider> rewrite;
    std::unique_ptr<intent::IntentProvider> intent;
    std::unique_ptr<sts::Embedder> embedder;
    std::unique_ptr<generation::GenerationProvider> generator;
    std::unique_ptr<catalog::SearchClient> search;
};

/// Providers selected by the config, including trained model files.
/// Throws IoError or ParseError when a model file is unusable.
Providers make_providers(const PipelineConfig& config);

class Pipeline {
public:
    Pipeline(PipelineConfig config, SessionStore& sessions, Providers providers = {},
             generation::PromptLibrary prompts = {});

    /// Replaces the catalog snapshot; turns in flight keep the old one.
    void set_catalog(catalog::CatalogIndex index);
    std::shared_ptr<const catalog::CatalogIndex> catalog() const;
    void set_policies(retrieval::PolicyStore policies);

    /// Parses the file, builds a new index and swaps it in. Throws IoError.
    IngestReport ingest_catalog(const std::string& path);

    /// Runs one turn and appends it to the session. Stage failures become
    /// notes plus a fallback response. Throws UnknownSession.
    TurnTrace handle_turn(const std::string& session_id, const std::string& query);

    const PipelineConfig& config() const { return config_; }
    SessionStore& sessions() { return sessions_; }

private:
    PipelineConfig config_;
    SessionStore& sessions_;
    Providers providers_;
    generation::PromptLibrary prompts_;

    mutable std::mutex snapshot_mutex_;
    std::shared_ptr<const catalog::CatalogIndex> catalog_;
    std::shared_ptr<const retrieval::PolicyStore> policies_;
};

}  // namespace pqa::service
