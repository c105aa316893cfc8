#include "pqa/service/pipeline.hpp"

#include <chrono>
#include <fstream>

#include "pqa/catalog/resolver.hpp"
#include "pqa/intent/keyword.hpp"
#include "pqa/intent/router.hpp"
#include "pqa/retrieval/chunker.hpp"
#include "pqa/retrieval/orchestrator.hpp"
#include "pqa/retrieval/reducer.hpp"
#include "pqa/sts/provider.hpp"

namespace pqa::service {
namespace {

using generation::GeneratedResponse;
using generation::ResponseKind;
using generation::ResponseProvider;

class StageTimer {
public:
    StageTimer(TurnTrace& trace, Stage stage)
        : trace_(trace), stage_(stage), start_(std::chrono::steady_clock::now()) {}
    ~StageTimer() {
        const auto d = std::chrono::steady_clock::now() - start_;
        trace_.timings.push_back({stage_, std::chrono::duration<double, std::milli>(d).count()});
    }

private:
    TurnTrace& trace_;
    Stage stage_;
    std::chrono::steady_clock::time_point start_;
};

GeneratedResponse fixed(ResponseKind kind, const std::string& text) {
    return {kind, text, {}, ResponseProvider::builtin_extractive, {}};
}

std::string note(Stage stage, const std::exception& e) {
    return std::string(to_string(stage)) + ": " + e.what();
}

}  // namespace

Providers make_providers(const PipelineConfig& config) {
    config.validate();
    Providers p;
    if (!is_builtin(config.saq_provider)) {
        p.rewrite = std::make_unique<saq::HttpRewriteProvider>(config.saq_provider);
    }
    if (!is_builtin(config.intent_provider)) {
        p.intent = std::make_unique<intent::HttpIntentProvider>(config.intent_provider);
    } else if (!config.intent_model.empty()) {
        std::ifstream in(config.intent_model);
        if (!in) throw IoError("cannot open intent model " + config.intent_model);
        Json j;
        try {
            j = Json::parse(in);
        } catch (const Json::exception& e) {
            throw ParseError(config.intent_model + ": " + e.what());
        }
        p.intent = std::make_unique<intent::SoftmaxIntentProvider>(intent::SoftmaxIntentModel::from_json(j));
    }
    p.embedder = sts::make_embedder(config);
    if (!is_builtin(config.generation_provider)) {
        p.generator = std::make_unique<generation::HttpGenerationProvider>(config.generation_provider);
    }
    if (!config.search_client.empty()) {
        p.search = std::make_unique<catalog::HttpSearchClient>(config.search_client);
    }
    return p;
}

Pipeline::Pipeline(PipelineConfig config, SessionStore& sessions, Providers providers,
                   generation::PromptLibrary prompts)
    : config_(std::move(config)),
      sessions_(sessions),
      providers_(std::move(providers)),
      prompts_(std::move(prompts)),
      catalog_(std::make_shared<catalog::CatalogIndex>()) {
    config_.validate();
    if (!providers_.intent) providers_.intent = std::make_unique<intent::KeywordIntentProvider>();
    if (!providers_.embedder) {
        providers_.embedder =
            std::make_unique<sts::HashedBowEmbedder>(static_cast<std::size_t>(config_.embedding_dim));
    }
}

void Pipeline::set_catalog(catalog::CatalogIndex index) {
    auto next = std::make_shared<const catalog::CatalogIndex>(std::move(index));
    std::lock_guard lock(snapshot_mutex_);
    catalog_ = std::move(next);
}

std::shared_ptr<const catalog::CatalogIndex> Pipeline::catalog() const {
    std::lock_guard lock(snapshot_mutex_);
    return catalog_;
}

void Pipeline::set_policies(retrieval::PolicyStore policies) {
    auto next = std::make_shared<const retrieval::PolicyStore>(std::move(policies));
    std::lock_guard lock(snapshot_mutex_);
    policies_ = std::move(next);
}

IngestReport Pipeline::ingest_catalog(const std::string& path) {
    ParsedCatalog parsed = parse_catalog_file(path);
    set_catalog(catalog::build_index(parsed.records));
    return parsed.report;
}

TurnTrace Pipeline::handle_turn(const std::string& session_id, const std::string& query) {
    const auto turn_lock = sessions_.turn_lock(session_id);
    std::lock_guard serialize(*turn_lock);

    const Session session = sessions_.get(session_id);
    std::shared_ptr<const catalog::CatalogIndex> index;
    std::shared_ptr<const retrieval::PolicyStore> policies;
    {
        std::lock_guard lock(snapshot_mutex_);
        index = catalog_;
        policies = policies_;
    }

    TurnTrace trace;
    trace.session_id = session_id;
    trace.user_query = query;
    std::vector<std::string> product_ids;

    auto finish = [&](GeneratedResponse response) {
        trace.response = std::move(response);
        ConversationTurn turn;
        turn.user_query = query;
        turn.system_response = trace.response.text;
        turn.resolved_product_ids = product_ids;
        if (trace.standalone_query) turn.standalone_query = trace.standalone_query->text;
        const Session updated = sessions_.append(session_id, std::move(turn));
        trace.turn_index = updated.turns.back().turn_index;
        return std::move(trace);
    };

    if (query.find_first_not_of(" \t\r\n") == std::string::npos) {
        trace.notes.push_back("saq: empty query");
        return finish(fixed(ResponseKind::clarification, config_.clarification_message));
    }

    // 1. Standalone query.
    try {
        StageTimer t(trace, Stage::saq);
        trace.standalone_query = saq::rewrite(query, session, index->names(), providers_.rewrite.get());
    } catch (const saq::NoFocus& e) {
        trace.notes.push_back(note(Stage::saq, e));
        return finish(fixed(ResponseKind::clarification, config_.clarification_message));
    } catch (const std::exception& e) {
        trace.notes.push_back(note(Stage::saq, e));
        return finish(fixed(ResponseKind::clarification, config_.clarification_message));
    }
    const saq::StandaloneQuery& sq = *trace.standalone_query;

    // 2. Product resolution.
    {
        StageTimer t(trace, Stage::catalog_search);
        try {
            trace.product_matches = catalog::resolve(sq, session, *index, providers_.search.get(),
                                                     config_.fuzzy_threshold);
            for (const auto& m : trace.product_matches->matches) product_ids.push_back(m.product_id);
        } catch (const std::exception& e) {
            trace.product_matches = catalog::ResolveResult{};
            trace.notes.push_back(note(Stage::catalog_search, e));
        }
    }

    // 3. Intent routing.
    {
        StageTimer t(trace, Stage::intent);
        try {
            trace.intent_distribution = providers_.intent->classify(sq.text);
        } catch (const std::exception& e) {
            trace.notes.push_back(note(Stage::intent, e) + "; using keyword intents");
            trace.intent_distribution = intent::classify_keyword(sq.text);
        }
        trace.routing_decision = intent::route(*trace.intent_distribution, config_);
    }
    const auto& routing = *trace.routing_decision;
    if (routing.kind == intent::RouteKind::non_decision) {
        return finish(fixed(ResponseKind::out_of_scope, config_.out_of_scope_message));
    }

    // 4. Source orchestration and chunking.
    std::vector<retrieval::ContextSnippet> snippets;
    {
        StageTimer t(trace, Stage::retrieval);
        BundleSummary summary;
        try {
            const auto bundle =
                retrieval::orchestrate(routing.selected_intents, product_ids, *index, policies.get());
            for (auto kind : {retrieval::SourceKind::structured, retrieval::SourceKind::semi_structured,
                              retrieval::SourceKind::unstructured, retrieval::SourceKind::policy}) {
                summary.per_source[std::string(retrieval::to_string(kind))] = bundle.count(kind);
            }
            summary.unknown_products = bundle.unknown_products;
            snippets = retrieval::chunk(bundle);
        } catch (const std::exception& e) {
            trace.notes.push_back(note(Stage::retrieval, e));
        }
        summary.snippets = snippets.size();
        trace.source_bundle = std::move(summary);
    }

    // 5. Context reduction.
    {
        StageTimer t(trace, Stage::reduction);
        try {
            trace.reduced_context = retrieval::reduce(sq, std::move(snippets), *providers_.embedder,
                                                      static_cast<std::size_t>(config_.k_context));
        } catch (const std::exception& e) {
            trace.notes.push_back(note(Stage::reduction, e));
            trace.reduced_context = retrieval::ReducedContext{sq.text, {}};
        }
    }

    // 6. Prompt and answer.
    GeneratedResponse response;
    {
        StageTimer t(trace, Stage::generation);
        generation::PromptParts parts;
        parts.persona_instructions = prompts_.persona(routing.selected_intents);
        parts.reduced_context = *trace.reduced_context;
        for (const auto& id : product_ids) {
            if (const ProductRecord* p = index->find(id)) parts.product_titles.push_back({id, p->canonical_name});
        }
        parts.user_context = session.user_context;
        parts.intent_metadata = prompts_.metadata();
        parts.routed_intents = routing.selected_intents;
        parts.standalone_query = sq;
        try {
            trace.composed_prompt = generation::compose_prompt(parts);
            response = generation::generate(parts, providers_.generator.get(), config_, *providers_.embedder);
            if (!response.fallback_reason.empty()) {
                trace.notes.push_back("generation: fell back to extractive: " + response.fallback_reason);
            }
        } catch (const std::exception& e) {
            trace.notes.push_back(note(Stage::generation, e));
            response = fixed(ResponseKind::idk, config_.idk_message);
        }
    }
    return finish(std::move(response));
}

}  // namespace pqa::service
