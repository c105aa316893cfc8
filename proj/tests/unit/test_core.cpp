#include <doctest.h>

#include <random>

#include "pqa/core/config.hpp"
#include "pqa/core/http_endpoint.hpp"
#include "pqa/core/json_io.hpp"
#include "pqa/core/text.hpp"
#include "pqa/core/types.hpp"

using namespace pqa;

TEST_CASE("normalize_text examples") {
    CHECK(normalize_text("") == "");
    CHECK(normalize_text("Apple iPhone 13 (128 GB, Blue)") == "apple iphone 13 128 gb blue");
    CHECK(normalize_text("  LG   242 L  ") == "lg 242 l");
    CHECK(normalize_text("Café") == normalize_text("Café"));
    CHECK(normalize_text("\xff" "abc") == "\xef\xbf\xbd" "abc");
}

TEST_CASE("normalize_text is idempotent on random strings") {
    const std::vector<std::string> pieces = {"A", "b", " ", "  ", "\t", ",", "(", ")", "-", "É",
                                             "é", "İ", "ß", "13", "\n", "!", "\xc3", "x"};
    std::mt19937_64 rng(1);
    for (int i = 0; i < 2000; ++i) {
        std::string s;
        const int n = static_cast<int>(rng() % 12);
        for (int j = 0; j < n; ++j) s += pieces[rng() % pieces.size()];
        const auto once = normalize_text(s);
        CHECK(normalize_text(once) == once);
    }
}

TEST_CASE("tokenize_with_offsets recovers verbatim surfaces") {
    const std::string raw = "Show me cases for iPhone-13, please";
    const auto spans = tokenize_with_offsets(raw);
    const auto tokens = tokenize(raw);
    REQUIRE(spans.size() == tokens.size());
    for (std::size_t i = 0; i < spans.size(); ++i) {
        CHECK(spans[i].norm == tokens[i]);
        CHECK(normalize_text(raw.substr(spans[i].begin, spans[i].end - spans[i].begin)) == tokens[i]);
    }
}

TEST_CASE("session_append_turn enforces consecutive indices") {
    Session s;
    ConversationTurn t;
    t.user_query = "q";
    t.turn_index = 1;
    s = session_append_turn(s, t);
    CHECK(s.turns.size() == 1);
    t.turn_index = 2;
    s = session_append_turn(s, t);
    t.turn_index = 3;
    CHECK(session_append_turn(s, t).turns.size() == 3);
    t.turn_index = 5;
    CHECK_THROWS_AS(session_append_turn(s, t), IndexGap);
    t.turn_index = 2;
    CHECK_THROWS_AS(session_append_turn(s, t), IndexGap);
}

TEST_CASE("indices stay strictly increasing under random append attempts") {
    std::mt19937 rng(3);
    Session s;
    for (int i = 0; i < 300; ++i) {
        ConversationTurn t;
        t.user_query = "q";
        t.turn_index = static_cast<std::uint32_t>(s.turns.size() + rng() % 3);
        try {
            s = session_append_turn(s, t);
        } catch (const IndexGap&) {
        }
    }
    for (std::size_t i = 0; i < s.turns.size(); ++i) CHECK(s.turns[i].turn_index == i + 1);
}

TEST_CASE("product record validation") {
    ProductRecord r{"P1", "Name", {}, {{"a", "1"}}, {}, {}};
    CHECK_NOTHROW(r.validate());
    r.structured.push_back({"a", "2"});
    CHECK_THROWS_AS(r.validate(), InvalidRecord);
    CHECK_THROWS_AS((ProductRecord{"", "Name", {}, {}, {}, {}}.validate()), InvalidRecord);
    CHECK_THROWS_AS((ProductRecord{"P1", "", {}, {}, {}, {}}.validate()), InvalidRecord);
}

TEST_CASE("taxonomy is fixed") {
    CHECK(IntentTaxonomy::labels.size() == 13);
    CHECK(IntentTaxonomy::decision_labels.size() == 12);
    CHECK(to_string(IntentTaxonomy::labels[0]) == "non_decision");
    CHECK(to_string(IntentTaxonomy::labels[12]) == "warranty");
    for (Intent i : IntentTaxonomy::labels) CHECK(parse_intent(to_string(i)) == i);
    CHECK_FALSE(parse_intent("shipping").has_value());
}

TEST_CASE("load_config examples") {
    CHECK(load_config("") == PipelineConfig{});
    CHECK(load_config("{}") == PipelineConfig{});
    auto c = load_config(R"({"tau_entropy": 0.3})");
    PipelineConfig expected;
    expected.tau_entropy = 0.3;
    CHECK(c == expected);
    try {
        load_config(R"({"top_n_intents": 20})");
        FAIL("expected RangeError");
    } catch (const RangeError& e) {
        CHECK(e.field() == "top_n_intents");
    }
    CHECK_THROWS_AS(load_config(R"({"bogus": 1})"), ParseError);
    CHECK_THROWS_AS(load_config(R"({"k_context": "x"})"), ParseError);
    CHECK_THROWS_AS(load_config("[1,2]"), ParseError);
    CHECK_THROWS_AS(load_config(R"({"tau_idk": 1.5})"), RangeError);
    CHECK_THROWS_AS(load_config(R"({"alpha_margin": -1})"), RangeError);
}

TEST_CASE("config round-trips through serialization") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        PipelineConfig c;
        c.tau_non_decision = unit(rng);
        c.tau_entropy = unit(rng);
        c.top_n_intents = 1 + static_cast<int>(rng() % 12);
        c.k_context = 1 + static_cast<int>(rng() % 50);
        c.alpha_margin = unit(rng) * 3;
        c.embedding_dim = 8 + static_cast<int>(rng() % 2000);
        c.tau_idk = unit(rng) * 2 - 1;
        c.fuzzy_threshold = unit(rng);
        c.saq_provider = (rng() % 2) ? "builtin" : "http://127.0.0.1:9/rewrite";
        c.seed = rng();
        const auto text = serialize_config(c);
        CHECK(load_config(text) == c);
        CHECK(serialize_config(load_config(text)) == text);
    }
}

TEST_CASE("session json round-trip") {
    Session s;
    s.session_id = "s-1";
    s.user_context = {{"region", "Bengaluru"}};
    s.current_page_product_id = "P100";
    ConversationTurn t;
    t.turn_index = 1;
    t.user_query = "Battery size?";
    t.system_response = "x";
    t.resolved_product_ids = {"P100"};
    t.timestamp_ms = 1700000000000;
    t.standalone_query = "What is the battery size of iPhone 13?";
    s.turns.push_back(t);
    Json j = s;
    CHECK(j.get<Session>() == s);
}

TEST_CASE("parse_url") {
    auto u = parse_url("http://127.0.0.1:8080/v1/rewrite");
    CHECK(u.scheme_host_port == "http://127.0.0.1:8080");
    CHECK(u.path == "/v1/rewrite");
    CHECK(parse_url("http://localhost").path == "/");
    CHECK_THROWS_AS(parse_url("ftp://x"), HttpError);
    CHECK_THROWS_AS(parse_url("https://x/y"), HttpError);
}

TEST_CASE("http_post_json reports unreachable endpoints") {
    CHECK_THROWS_AS(http_post_json("http://127.0.0.1:1/x", Json::object(), std::chrono::milliseconds(200)),
                    HttpError);
}
