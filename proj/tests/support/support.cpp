#include "support.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "pqa/generation/prompt_library.hpp"
#include "pqa/service/ingest.hpp"

namespace pqa::test {

std::string fixture_path(std::string_view name) {
    return std::string(PQA_FIXTURE_DIR) + "/" + std::string(name);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::vector<ProductRecord> toy_records() {
    auto parsed = service::parse_catalog_file(fixture_path("catalog.jsonl"));
    if (!parsed.report.errors.empty()) throw std::runtime_error("toy catalog has bad lines");
    return parsed.records;
}

catalog::CatalogIndex toy_index() { return catalog::build_index(toy_records()); }

retrieval::PolicyStore toy_policies() {
    return retrieval::load_policy_store(fixture_path("policies.jsonl"));
}

Session make_session(std::optional<std::string> page_product_id,
                     std::vector<ConversationTurn> turns) {
    Session s;
    s.session_id = "test";
    s.current_page_product_id = std::move(page_product_id);
    s.turns = std::move(turns);
    return s;
}

ConversationTurn make_turn(std::uint32_t index, std::string user, std::string system,
                           std::string standalone) {
    ConversationTurn t;
    t.turn_index = index;
    t.user_query = std::move(user);
    t.system_response = std::move(system);
    t.standalone_query = std::move(standalone);
    return t;
}

TableEmbedder::TableEmbedder(std::size_t dim,
                             std::vector<std::pair<std::string, std::vector<double>>> table)
    : dim_(dim), table_(std::move(table)) {}

sts::EmbeddingVector TableEmbedder::embed(std::string_view text) const {
    for (const auto& [key, values] : table_) {
        if (key == text) return sts::EmbeddingVector(values);
    }
    return sts::EmbeddingVector(std::vector<double>(dim_, 0.0));
}

std::unique_ptr<service::Pipeline> toy_pipeline(service::SessionStore& store, service::Providers providers,
                                                PipelineConfig config) {
    auto pipeline = std::make_unique<service::Pipeline>(std::move(config), store, std::move(providers),
                                                        generation::load_prompt_library(PQA_PROMPT_DIR));
    pipeline->set_catalog(toy_index());
    pipeline->set_policies(toy_policies());
    return pipeline;
}

std::string start_toy_session(service::SessionStore& store) {
    return store.create({{"region", "Bengaluru"}}, std::string("P100")).session_id;
}

const std::vector<ScriptedTurn>& scripted_conversation() {
    using generation::ResponseKind;
    static const std::vector<ScriptedTurn> turns = {
        {"Battery size?", ResponseKind::answer},
        {"Warranty?", ResponseKind::answer},
        {"Delivery time and offers?", ResponseKind::answer},
        {"Show me cases for this phone.", ResponseKind::out_of_scope},
        {"How about iPhone 14?", ResponseKind::answer},
        {"Does it support wireless charging?", ResponseKind::idk},
    };
    return turns;
}

generation::PromptParts snapshot_parts() {
    using retrieval::ContextSnippet;
    using retrieval::SourceKind;
    generation::PromptParts parts;
    parts.persona_instructions = "You are a shopping assistant.\nAnswer only from CONTEXT.";
    parts.reduced_context.query_text = "What is the battery size of iPhone 13?";
    parts.reduced_context.snippets = {
        ContextSnippet{"P100:product_spec:structured:0000", "P100", Intent::product_spec, SourceKind::structured,
                       "Battery Size: 3240 mAh", 0.3535533905932738},
        ContextSnippet{"P100:product_spec:unstructured:0000", "P100", Intent::product_spec,
                       SourceKind::unstructured, "Long review\nline two", 0.1},
    };
    parts.product_titles = {{"P100", "Apple iPhone 13 (128 GB, Blue)"}};
    parts.user_context = {{"region", "Bengaluru"}, {"size", "M"}};
    parts.intent_metadata = {{Intent::product_spec, "Prefer attributes."}, {Intent::warranty, "Use policy."}};
    parts.routed_intents = {Intent::product_spec};
    parts.standalone_query = {"What is the battery size of iPhone 13?", {"iPhone 13"},
                              saq::RewriteSource::builtin_rules, ""};
    return parts;
}

generation::PromptParts random_parts(std::mt19937_64& rng) {
    static const std::vector<std::string> pieces = {"a", "Battery", " ", "\n", "#", "## ", ":", "é", "13", "?"};
    auto text = [&](std::size_t max_pieces) {
        std::string s;
        for (std::size_t i = 0, n = rng() % (max_pieces + 1); i < n; ++i) s += pieces[rng() % pieces.size()];
        return s;
    };
    generation::PromptParts parts;
    parts.persona_instructions = text(8);
    parts.standalone_query = {"q" + text(6), {}, saq::RewriteSource::builtin_rules, ""};
    parts.reduced_context.query_text = parts.standalone_query.text;
    const std::size_t n_snippets = rng() % 6;
    for (std::size_t i = 0; i < n_snippets; ++i) {
        retrieval::ContextSnippet s;
        s.snippet_id = "P" + std::to_string(rng() % 3) + ":product_spec:structured:" + std::to_string(i);
        s.product_id = "P" + std::to_string(rng() % 3);
        s.text = "t" + text(10);
        s.score = 1.0 - static_cast<double>(i) / 10;
        parts.reduced_context.snippets.push_back(s);
    }
    if (n_snippets > 0 || rng() % 2) {
        for (std::size_t i = 0, n = 1 + rng() % 2; i < n; ++i) {
            parts.product_titles.push_back({"P" + std::to_string(i), "Title " + text(4)});
        }
    }
    for (std::size_t i = 0, n = rng() % 3; i < n; ++i) parts.user_context["k" + std::to_string(i)] = text(4);
    for (Intent intent : IntentTaxonomy::decision_labels) {
        if (rng() % 3 == 0) parts.intent_metadata[intent] = text(5);
        if (rng() % 5 == 0) parts.routed_intents.push_back(intent);
    }
    return parts;
}

std::string prompt_layout_violation(const generation::ComposedPrompt& prompt) {
    const auto& text = prompt.text;
    std::size_t cursor = 0;
    for (std::size_t i = 0; i < generation::kSectionHeaders.size(); ++i) {
        const std::string header = std::string(generation::kSectionHeaders[i]) + "\n";
        const auto [begin, end] = prompt.section_offsets[i];
        if (text.compare(cursor, header.size(), header) != 0) {
            return "section " + std::to_string(i) + " header missing at offset " + std::to_string(cursor);
        }
        if (begin != cursor + header.size()) return "section " + std::to_string(i) + " body does not follow header";
        if (end < begin || end > text.size()) return "section " + std::to_string(i) + " has an invalid range";
        cursor = end;
        if (begin != end) {
            if (text.compare(cursor, 1, "\n") != 0) return "section " + std::to_string(i) + " body not newline-terminated";
            ++cursor;
        }
        if (text.compare(cursor, 1, "\n") != 0) return "section " + std::to_string(i) + " lacks its blank line";
        ++cursor;
    }
    if (cursor != text.size()) return "trailing text after the last section";
    return {};
}

double hinge_argument(const sts::Embedder& embedder, const sts::Triplet& t, double alpha) {
    const auto q = embedder.embed(t.query);
    const auto p = embedder.embed(t.positive);
    const auto n = embedder.embed(t.negative);
    double dp = 0.0, dn = 0.0;
    for (std::size_t i = 0; i < q.dim(); ++i) {
        dp += (q[i] - p[i]) * (q[i] - p[i]);
        dn += (q[i] - n[i]) * (q[i] - n[i]);
    }
    return dp - dn + alpha;
}

bool all_embeddable(const sts::Embedder& embedder, const sts::Triplet& t) {
    return !embedder.embed(t.query).is_zero() && !embedder.embed(t.positive).is_zero() &&
           !embedder.embed(t.negative).is_zero();
}

}  // namespace pqa::test
