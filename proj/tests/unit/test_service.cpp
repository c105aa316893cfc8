#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "pqa/core/json_io.hpp"
#include "pqa/eval/judgment.hpp"
#include "pqa/service/eval_job.hpp"
#include "pqa/service/ingest.hpp"
#include "pqa/service/pipeline.hpp"
#include "pqa/service/trace.hpp"
#include "support.hpp"

using namespace pqa;
using namespace pqa::service;
using generation::ResponseKind;

namespace {

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path) << content;
    return path;
}

Clock counting_clock() {
    auto t = std::make_shared<std::int64_t>(1000);
    return [t] { return (*t)++; };
}

const char* kLine1 = R"({"product_id":"A","canonical_name":"Alpha","structured":{"Colour":"Red"}})";
const char* kLine2 = R"({"product_id":"B","canonical_name":"Beta"})";
const char* kLine3 = R"({"product_id":"C","canonical_name":"Gamma","unstructured":["Nice."]})";

struct FailingIntent final : intent::IntentProvider {
    intent::IntentDistribution classify(const std::string&) override { throw std::runtime_error("intent down"); }
};

struct FailingGenerator final : generation::GenerationProvider {
    std::string complete(const std::string&) override { throw std::runtime_error("llm down"); }
};

}  // namespace

TEST_CASE("session store basics") {
    SessionStore store(counting_clock());
    const auto s = store.create({{"region", "Bengaluru"}}, std::string("P100"));
    CHECK(s.session_id == "s-000001");
    CHECK(store.create({}, std::nullopt).session_id == "s-000002");
    CHECK(store.contains(s.session_id));
    CHECK(store.get(s.session_id).current_page_product_id == "P100");
    ConversationTurn t;
    t.user_query = "q";
    auto updated = store.append(s.session_id, t);
    CHECK(updated.turns.back().turn_index == 1);
    CHECK(updated.turns.back().timestamp_ms > 0);
    CHECK(store.append(s.session_id, t).turns.back().turn_index == 2);
    CHECK_THROWS_AS(store.get("missing"), UnknownSession);
    CHECK_THROWS_AS(store.append("missing", t), UnknownSession);
    CHECK(store.ids().size() == 2);
}

TEST_CASE("session log replay reconstructs identical state") {
    const auto log = std::filesystem::temp_directory_path() / "pqa_session_log_test.jsonl";
    std::filesystem::remove(log);
    std::map<std::string, std::string> before;
    {
        SessionStore store(log.string(), counting_clock());
        auto pipeline = pqa::test::toy_pipeline(store);
        const auto a = pqa::test::start_toy_session(store);
        const auto b = store.create({}, std::nullopt).session_id;
        for (const auto& turn : pqa::test::scripted_conversation()) pipeline->handle_turn(a, turn.query);
        pipeline->handle_turn(b, "What is the capacity of LG 242 L Frost Free 2 Star?");
        for (const auto& id : store.ids()) before[id] = Json(store.get(id)).dump();
    }
    SessionStore reopened(log.string(), counting_clock());
    std::map<std::string, std::string> after;
    for (const auto& id : reopened.ids()) after[id] = Json(reopened.get(id)).dump();
    CHECK(after == before);
    std::ifstream in(log);
    const auto replayed = SessionStore::replay(in);
    CHECK(replayed.size() == 2);
    CHECK(reopened.create({}, std::nullopt).session_id == "s-000003");
    std::filesystem::remove(log);

    std::istringstream bad("{\"event\":\"create\",\"session\":{\"session_id\":\"x\"}}\n{\"event\":\"oops\"}\n");
    try {
        SessionStore::replay(bad);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("ingest examples") {
    std::istringstream valid(std::string(kLine1) + "\n" + kLine2 + "\n" + kLine3 + "\n");
    auto parsed = parse_catalog(valid);
    CHECK(parsed.report.records_read == 3);
    CHECK(parsed.report.records_indexed == 3);
    CHECK(parsed.report.errors.empty());

    std::istringstream malformed(std::string(kLine1) + "\n{not json\n" + kLine2 + "\n" + kLine3 + "\n");
    parsed = parse_catalog(malformed);
    CHECK(parsed.report.records_indexed == 3);
    REQUIRE(parsed.report.errors.size() == 1);
    CHECK(parsed.report.errors[0].line == 2);

    std::istringstream dup(std::string(kLine1) + "\n" + R"({"product_id":"A","canonical_name":"Other"})" + "\n" +
                           kLine2 + "\n");
    parsed = parse_catalog(dup);
    CHECK(parsed.report.duplicates == 1);
    CHECK(parsed.report.records_indexed == 2);
    CHECK(parsed.records[0].canonical_name == "Alpha");

    std::istringstream collision(std::string(kLine1) + "\n" + R"({"product_id":"Z","canonical_name":"ALPHA"})" + "\n");
    parsed = parse_catalog(collision);
    CHECK(parsed.report.records_indexed == 1);
    CHECK(parsed.report.errors.size() == 1);
    CHECK_THROWS_AS(parse_catalog_file("/nonexistent.jsonl"), IoError);
}

TEST_CASE("ingest report totals are consistent on random files") {
    std::mt19937_64 rng(61);
    const std::vector<std::string> lines = {kLine1, kLine2, kLine3, "{bad", R"({"product_id":"D"})",
                                            R"({"product_id":"E","canonical_name":"gamma"})", ""};
    for (int t = 0; t < 200; ++t) {
        std::string content;
        for (std::size_t i = 0, n = rng() % 10; i < n; ++i) content += lines[rng() % lines.size()] + "\n";
        std::istringstream in(content);
        const auto r = parse_catalog(in).report;
        CHECK(r.records_read == r.records_indexed + r.duplicates + r.errors.size());
    }
}

TEST_CASE("pipeline ingest swaps the catalog") {
    SessionStore store(counting_clock());
    auto pipeline = pqa::test::toy_pipeline(store);
    const auto old = pipeline->catalog();
    const auto path = temp_file("pqa_ingest_test.jsonl", std::string(kLine1) + "\n" + kLine2 + "\n");
    const auto report = pipeline->ingest_catalog(path.string());
    CHECK(report.records_indexed == 2);
    CHECK(pipeline->catalog()->size() == 2);
    CHECK(old->size() == 5);
    CHECK_THROWS_AS(pipeline->ingest_catalog("/nonexistent.jsonl"), IoError);
    std::filesystem::remove(path);
}

TEST_CASE("handle_turn: first turn on the product page") {
    SessionStore store(counting_clock());
    auto pipeline = pqa::test::toy_pipeline(store);
    const auto id = pqa::test::start_toy_session(store);
    const auto t = pipeline->handle_turn(id, "Battery size?");
    CHECK(t.standalone_query->text == "What is the battery size of iPhone 13?");
    CHECK(t.routing_decision->selected_intents == std::vector<Intent>{Intent::product_spec});
    CHECK(t.response.kind == ResponseKind::answer);
    CHECK(t.response.supporting_snippet_ids == std::vector<std::string>{"P100:product_spec:structured:0000"});
    CHECK(t.stages() == std::vector<Stage>(kStageOrder.begin(), kStageOrder.end()));
    CHECK(t.composed_prompt->section(1).find("Product P100: Apple iPhone 13 (128 GB, Blue)") == 0);
    CHECK(t.composed_prompt->section(2) == "region: Bengaluru");
    for (const auto& timing : t.timings) CHECK(timing.ms >= 0.0);

    const auto t2 = pipeline->handle_turn(id, "Display size?");
    CHECK(t2.standalone_query->text == "What is the display size of iPhone 13?");
    CHECK(t2.response.supporting_snippet_ids == std::vector<std::string>{"P100:product_spec:structured:0001"});
    CHECK(t2.turn_index == 2);
    CHECK(store.get(id).turns[1].standalone_query == "What is the display size of iPhone 13?");
}

TEST_CASE("handle_turn: non-decision queries stop after three stages") {
    SessionStore store(counting_clock());
    auto pipeline = pqa::test::toy_pipeline(store);
    const auto id = pqa::test::start_toy_session(store);
    const auto t = pipeline->handle_turn(id, "Show me cases for this phone.");
    CHECK(t.routing_decision->kind == intent::RouteKind::non_decision);
    CHECK(t.response.kind == ResponseKind::out_of_scope);
    CHECK(t.stages() == std::vector<Stage>{Stage::saq, Stage::catalog_search, Stage::intent});
    CHECK_FALSE(t.reduced_context.has_value());
    CHECK_FALSE(t.composed_prompt.has_value());
    const auto j = to_json_value(t);
    CHECK_FALSE(j.contains("reduced_context"));
}

TEST_CASE("handle_turn: scripted conversation") {
    SessionStore store(counting_clock());
    auto pipeline = pqa::test::toy_pipeline(store);
    const auto id = pqa::test::start_toy_session(store);
    for (const auto& turn : pqa::test::scripted_conversation()) {
        const auto t = pipeline->handle_turn(id, turn.query);
        CHECK_MESSAGE(t.response.kind == turn.expected, turn.query);
        CHECK(t.notes.empty());
        if (t.response.kind == ResponseKind::answer) {
            for (const auto& sid : t.response.supporting_snippet_ids) {
                CHECK(std::any_of(t.reduced_context->snippets.begin(), t.reduced_context->snippets.end(),
                                  [&](const retrieval::ContextSnippet& s) { return s.snippet_id == sid; }));
            }
        }
    }
    const auto s = store.get(id);
    REQUIRE(s.turns.size() == 6);
    CHECK(s.turns[4].standalone_query == "What is the delivery time and offers of iPhone 14?");
    CHECK(s.turns[4].resolved_product_ids == std::vector<std::string>{"P200"});
}

TEST_CASE("handle_turn: stage failures degrade gracefully") {
    SessionStore store(counting_clock());
    Providers providers;
    providers.intent = std::make_unique<FailingIntent>();
    providers.generator = std::make_unique<FailingGenerator>();
    auto pipeline = pqa::test::toy_pipeline(store, std::move(providers));
    const auto id = pqa::test::start_toy_session(store);
    const auto t = pipeline->handle_turn(id, "Battery size?");
    CHECK(t.response.kind == ResponseKind::answer);
    CHECK(t.response.provider == generation::ResponseProvider::builtin_extractive);
    REQUIRE(t.notes.size() == 2);
    CHECK(t.notes[0].find("intent down") != std::string::npos);
    CHECK(t.notes[1].find("llm down") != std::string::npos);

    const auto lost = store.create({}, std::nullopt).session_id;
    const auto c = pipeline->handle_turn(lost, "Display size?");
    CHECK(c.response.kind == ResponseKind::clarification);
    CHECK(c.stages() == std::vector<Stage>{Stage::saq});
    CHECK(pipeline->handle_turn(lost, "   ").response.kind == ResponseKind::clarification);
    CHECK_THROWS_AS(pipeline->handle_turn("missing", "hi"), UnknownSession);
}

TEST_CASE("handle_turn without a policy store notes the failure") {
    SessionStore store(counting_clock());
    Pipeline pipeline(PipelineConfig{}, store);
    pipeline.set_catalog(pqa::test::toy_index());
    const auto id = pqa::test::start_toy_session(store);
    const auto t = pipeline.handle_turn(id, "Warranty?");
    CHECK(t.response.kind == ResponseKind::idk);
    CHECK(t.notes.size() == 1);
    CHECK(t.stages().size() == 6);
}

TEST_CASE("concurrent sessions keep consecutive turn indices") {
    SessionStore store;
    auto pipeline = pqa::test::toy_pipeline(store);
    std::vector<std::string> ids;
    for (int i = 0; i < 4; ++i) ids.push_back(pqa::test::start_toy_session(store));
    std::vector<std::thread> threads;
    for (int i = 0; i < 8; ++i) {
        threads.emplace_back([&, i] {
            for (int k = 0; k < 10; ++k) pipeline->handle_turn(ids[static_cast<std::size_t>(i % 4)], "Battery size?");
        });
    }
    for (auto& t : threads) t.join();
    for (const auto& id : ids) {
        const auto s = store.get(id);
        REQUIRE(s.turns.size() == 20);
        for (std::size_t i = 0; i < s.turns.size(); ++i) CHECK(s.turns[i].turn_index == i + 1);
    }
}

TEST_CASE("eval job") {
    const auto report = run_eval_job(pqa::test::fixture_path("judgments_f1.jsonl"));
    CHECK(report.overall_counts.M == 10);
    CHECK(*report.overall.precision == doctest::Approx(5.0 / 7));
    CHECK(report.by_intent.size() == 4);
    CHECK(run_eval_job(pqa::test::fixture_path("judgments_f1.jsonl"), false).by_intent.empty());

    const auto empty = temp_file("pqa_empty_judgments.jsonl", "");
    const auto r = run_eval_job(empty.string());
    CHECK(r.overall_counts.M == 0);
    CHECK_FALSE(r.overall.accuracy.has_value());
    std::filesystem::remove(empty);

    try {
        run_eval_job(pqa::test::fixture_path("judgments_bad.jsonl"));
        FAIL("expected SchemaError");
    } catch (const eval::SchemaError& e) {
        CHECK(e.line() == 5);
    }
    CHECK_THROWS_AS(run_eval_job("/nonexistent.jsonl"), IoError);
}

TEST_CASE("make_providers honours model files") {
    PipelineConfig c;
    auto p = make_providers(c);
    CHECK(p.embedder != nullptr);
    CHECK(p.intent == nullptr);
    CHECK(p.search == nullptr);
    c.intent_model = "/nonexistent/model.json";
    CHECK_THROWS_AS(make_providers(c), IoError);
    c.intent_model.clear();
    c.search_client = "http://127.0.0.1:9/search";
    CHECK(make_providers(c).search != nullptr);
}
