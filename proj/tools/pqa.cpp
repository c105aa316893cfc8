// pqa: command-line front end for the product QA engine.
//
//   pqa serve --config cfg.json --catalog products.jsonl --policies policies.jsonl
//   pqa ingest products.jsonl
//   pqa chat session.json
//   pqa eval judgments.jsonl --format table
//   pqa train-sts triplets.jsonl --out sts.json
//   pqa train-intent intents.jsonl --out intent.json
//   pqa recall-bench cases.jsonl --k 15
//
// Exit codes: 0 ok, 2 schema or validation error, 3 I/O error.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "pqa/catalog/index.hpp"
#include "pqa/core/config.hpp"
#include "pqa/eval/report.hpp"
#include "pqa/intent/softmax.hpp"
#include "pqa/retrieval/recall.hpp"
#include "pqa/service/eval_job.hpp"
#include "pqa/service/http_api.hpp"
#include "pqa/service/pipeline.hpp"
#include "pqa/sts/provider.hpp"
#include "pqa/sts/triplet.hpp"

namespace fs = std::filesystem;
using namespace pqa;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSchema = 2;
constexpr int kExitIo = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    return in;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << content)) throw IoError("cannot write " + path);
}

PipelineConfig config_from(const std::string& path) {
    return path.empty() ? PipelineConfig{} : load_config(read_file(path));
}

generation::PromptLibrary prompts_for(const PipelineConfig& config) {
    const std::string dir = config.prompt_dir.empty() ? PQA_DEFAULT_PROMPT_DIR : config.prompt_dir;
    return generation::load_prompt_library(dir);
}

std::string resolve_relative(const fs::path& base, const std::string& p) {
    if (p.empty() || fs::path(p).is_absolute()) return p;
    return (base / p).string();
}

struct Options {
    std::string config;
    // serve
    std::string host = "127.0.0.1";
    int port = 8080;
    std::string catalog;
    std::string policies;
    std::string session_log;
    // file arguments
    std::string input;
    // eval
    std::string format = "table";
    bool no_group = false;
    // training
    std::string out;
    int epochs = -1;
    double learning_rate = -1.0;
    // recall-bench
    std::size_t k = 15;
    std::string model;
    // chat
    bool show_trace = false;
};

std::unique_ptr<service::Pipeline> make_pipeline(const PipelineConfig& config, service::SessionStore& store,
                                                 const std::string& catalog, const std::string& policies) {
    auto pipeline = std::make_unique<service::Pipeline>(config, store, service::make_providers(config),
                                                        prompts_for(config));
    if (!catalog.empty()) {
        const auto report = pipeline->ingest_catalog(catalog);
        std::cerr << "catalog: " << report.records_indexed << " products indexed, "
                  << report.errors.size() << " bad lines, " << report.duplicates << " duplicates\n";
    }
    if (!policies.empty()) pipeline->set_policies(retrieval::load_policy_store(policies));
    return pipeline;
}

int cmd_serve(const Options& o) {
    const auto config = config_from(o.config);
    auto store = o.session_log.empty() ? std::make_unique<service::SessionStore>()
                                       : std::make_unique<service::SessionStore>(o.session_log);
    auto pipeline = make_pipeline(config, *store, o.catalog, o.policies);
    std::cerr << "listening on " << o.host << ":" << o.port << "\n";
    if (!service::serve(*pipeline, o.host, o.port)) throw IoError("cannot bind " + o.host + ":" + std::to_string(o.port));
    return kExitOk;
}

int cmd_ingest(const Options& o) {
    auto parsed = service::parse_catalog_file(o.input);
    catalog::build_index(parsed.records);
    std::cout << Json(parsed.report).dump(2) << "\n";
    return parsed.report.errors.empty() ? kExitOk : kExitSchema;
}

// Session fixture: {"catalog", "policies", "config", "user_context", "page_product_id"};
// relative paths are taken from the fixture's directory. Queries come from stdin.
int cmd_chat(const Options& o) {
    const Json fixture = Json::parse(read_file(o.input));
    const fs::path base = fs::path(o.input).parent_path();
    const std::string config_path =
        o.config.empty() ? resolve_relative(base, fixture.value("config", "")) : o.config;
    const auto config = config_from(config_path);

    service::SessionStore store;
    auto pipeline = make_pipeline(config, store, resolve_relative(base, fixture.value("catalog", "")),
                                  resolve_relative(base, fixture.value("policies", "")));
    UserContext ctx;
    if (fixture.contains("user_context")) ctx = fixture.at("user_context").get<UserContext>();
    std::optional<std::string> page;
    if (fixture.contains("page_product_id")) page = fixture.at("page_product_id").get<std::string>();
    const Session session = store.create(std::move(ctx), std::move(page));

    std::string line;
    while (std::cout << "> " << std::flush, std::getline(std::cin, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto trace = pipeline->handle_turn(session.session_id, line);
        if (o.show_trace) std::cout << service::to_json_value(trace).dump(2) << "\n";
        std::cout << "[" << generation::to_string(trace.response.kind) << "] " << trace.response.text << "\n";
    }
    std::cout << "\n";
    return kExitOk;
}

int cmd_eval(const Options& o) {
    const auto report = service::run_eval_job(o.input, !o.no_group);
    if (o.format == "both") {
        std::cout << eval::emit_report(report, "table") << "\n" << eval::emit_report(report, "json");
    } else {
        std::cout << eval::emit_report(report, o.format);
    }
    return kExitOk;
}

int cmd_train_sts(const Options& o) {
    const auto config = config_from(o.config);
    auto in = open_input(o.input);
    const auto triplets = sts::read_triplets(in);
    sts::TripletTrainOptions options;
    options.seed = config.seed;
    if (o.epochs > 0) options.epochs = o.epochs;
    if (o.learning_rate > 0) options.learning_rate = o.learning_rate;
    sts::TripletTrainReport report;
    const auto model = sts::train_triplet(triplets, config, options, &report);
    std::cerr << "mean loss " << report.mean_loss.front() << " -> " << report.mean_loss.back() << " over "
              << report.mean_loss.size() - 1 << " epochs\n";
    if (!o.out.empty()) write_file(o.out, model.to_json().dump() + "\n");
    return kExitOk;
}

int cmd_train_intent(const Options& o) {
    const auto config = config_from(o.config);
    auto in = open_input(o.input);
    const auto dataset = intent::read_intent_dataset(in);
    intent::SoftmaxTrainOptions options;
    options.seed = config.seed;
    if (o.epochs > 0) options.epochs = o.epochs;
    if (o.learning_rate > 0) options.learning_rate = o.learning_rate;
    const auto model = intent::train_softmax(dataset, options);
    std::size_t correct = 0;
    for (const auto& ex : dataset) correct += to_string(model.predict(ex.text).argmax()) == ex.label;
    std::cerr << "training accuracy " << correct << "/" << dataset.size() << "\n";
    if (!o.out.empty()) write_file(o.out, model.to_json().dump() + "\n");
    return kExitOk;
}

int cmd_recall_bench(const Options& o) {
    auto config = config_from(o.config);
    auto in = open_input(o.input);
    const auto cases = retrieval::read_recall_cases(in);
    const sts::HashedBowEmbedder base(static_cast<std::size_t>(config.embedding_dim));
    std::cout << "cases " << cases.size() << ", k " << o.k << "\n";
    std::cout << "lexical_overlap  " << retrieval::recall_at_k(cases, retrieval::lexical_overlap_scorer(), o.k) << "\n";
    std::cout << "hashed_bow       " << retrieval::recall_at_k(cases, base, o.k) << "\n";
    if (!o.model.empty()) {
        config.sts_model = o.model;
        const auto trained = sts::make_embedder(config);
        std::cout << "trained          " << retrieval::recall_at_k(cases, *trained, o.k) << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Product question answering engine"};
    app.require_subcommand(1);
    Options o;

    auto* serve = app.add_subcommand("serve", "Run the HTTP API");
    serve->add_option("--config", o.config, "Pipeline config JSON");
    serve->add_option("--host", o.host);
    serve->add_option("--port", o.port);
    serve->add_option("--catalog", o.catalog, "Product JSONL to ingest at startup");
    serve->add_option("--policies", o.policies, "Policy JSONL");
    serve->add_option("--session-log", o.session_log, "Append-only session log");

    auto* ingest = app.add_subcommand("ingest", "Validate a product JSONL file");
    ingest->add_option("file", o.input)->required();

    auto* chat = app.add_subcommand("chat", "Interactive session over a fixture");
    chat->add_option("fixture", o.input)->required();
    chat->add_option("--config", o.config);
    chat->add_flag("--trace", o.show_trace, "Print the full turn trace");

    auto* eval = app.add_subcommand("eval", "Metrics over a judgment file");
    eval->add_option("judgments", o.input)->required();
    eval->add_option("--format", o.format)->check(CLI::IsMember({"table", "json", "both"}));
    eval->add_flag("--no-group", o.no_group, "Skip per-intent rows");

    auto* train_sts = app.add_subcommand("train-sts", "Train the embedding projection");
    train_sts->add_option("triplets", o.input)->required();
    train_sts->add_option("--config", o.config);
    train_sts->add_option("--out", o.out);
    train_sts->add_option("--epochs", o.epochs);
    train_sts->add_option("--lr", o.learning_rate);

    auto* train_intent = app.add_subcommand("train-intent", "Train the softmax intent model");
    train_intent->add_option("dataset", o.input)->required();
    train_intent->add_option("--config", o.config);
    train_intent->add_option("--out", o.out);
    train_intent->add_option("--epochs", o.epochs);
    train_intent->add_option("--lr", o.learning_rate);

    auto* recall = app.add_subcommand("recall-bench", "Recall@k over a benchmark file");
    recall->add_option("cases", o.input)->required();
    recall->add_option("--k", o.k)->check(CLI::PositiveNumber);
    recall->add_option("--config", o.config);
    recall->add_option("--model", o.model, "Trained embedder to compare");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*serve) return cmd_serve(o);
        if (*ingest) return cmd_ingest(o);
        if (*chat) return cmd_chat(o);
        if (*eval) return cmd_eval(o);
        if (*train_sts) return cmd_train_sts(o);
        if (*train_intent) return cmd_train_intent(o);
        if (*recall) return cmd_recall_bench(o);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const retrieval::PolicyStoreUnavailable& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSchema;
    }
    return kExitOk;
}
