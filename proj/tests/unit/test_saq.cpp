#include <doctest.h>

#include <httplib.h>

#include <chrono>
#include <thread>

#include "mock_server.hpp"
#include "pqa/core/json_io.hpp"
#include "pqa/saq/provider.hpp"
#include "support.hpp"

using namespace pqa;
using namespace pqa::saq;
using pqa::test::make_session;
using pqa::test::make_turn;

namespace {

const NameCatalog& names() {
    static const NameCatalog catalog(pqa::test::toy_records());
    return catalog;
}

const char* kFridgeListing =
    "Here are some fridges: LG 242 L Frost Free 2 Star, LG 260 L Smart Inverter 3 Star and "
    "Samsung 253 L Digital Inverter 3 Star.";

}  // namespace

TEST_CASE("find_mentions is leftmost-longest with verbatim surfaces") {
    auto ms = find_mentions("compare Apple iPhone 13 (128 GB, Blue) with iphone 14", names());
    REQUIRE(ms.size() == 2);
    CHECK(ms[0].surface == "Apple iPhone 13 (128 GB, Blue)");
    CHECK(names().entries()[ms[0].entry].product_id == "P100");
    CHECK(ms[1].surface == "iphone 14");
    CHECK(names().entries()[ms[1].entry].product_id == "P200");
    CHECK(find_mentions("nothing here", names()).empty());
    CHECK(listed_entries(kFridgeListing, names()).size() == 3);
}

TEST_CASE("derive_focus examples") {
    auto page = derive_focus(make_session("P100"), names());
    REQUIRE(page.focus_product_name);
    CHECK(*page.focus_product_name == "Apple iPhone 13 (128 GB, Blue)");
    CHECK(page.derivation == FocusDerivation::page);

    CHECK_FALSE(derive_focus(make_session(std::nullopt), names()).focus_product_name);

    auto switched = derive_focus(
        make_session("P100", {make_turn(1, "How about iPhone 14?", "ok",
                                        "What is the battery size of iPhone 14?")}),
        names());
    REQUIRE(switched.focus_product_name);
    CHECK(*switched.focus_product_name == "Apple iPhone 14 (128 GB, Midnight)");
    CHECK(switched.derivation == FocusDerivation::history);
    CHECK(switched.surface == "iPhone 14");

    auto listing = derive_focus(make_session(std::nullopt, {make_turn(1, "fridges", kFridgeListing)}),
                                names());
    CHECK(listing.ambiguous);
}

TEST_CASE("worked rewrite scenarios") {
    const auto battery_turn = make_turn(1, "Battery size?",
                                        "Apple iPhone 13 (128 GB, Blue): Battery Size: 3240 mAh",
                                        "What is the battery size of iPhone 13?");
    const auto s = make_session("P100", {battery_turn});

    CHECK(rewrite_rule_based("Display size?", s, names()).text ==
          "What is the display size of iPhone 13?");
    auto sw = rewrite_rule_based("How about iPhone 14?", s, names());
    CHECK(sw.text == "What is the battery size of iPhone 14?");
    CHECK(sw.mentioned_products == std::vector<std::string>{"iPhone 14"});
    CHECK(rewrite_rule_based("Show me cases for this phone.", make_session("P100"), names()).text ==
          "Show me cases for iPhone 13.");
    auto fridge = rewrite_rule_based(
        "Capacity of LG fridge?", make_session(std::nullopt, {make_turn(1, "Show fridges", kFridgeListing)}),
        names());
    CHECK(fridge.text == "What is the capacity of LG 242 L Frost Free 2 Star?");
    CHECK(fridge.mentioned_products == std::vector<std::string>{"LG 242 L Frost Free 2 Star"});
}

TEST_CASE("anaphora") {
    const auto listing = make_session(std::nullopt, {make_turn(1, "Show fridges", kFridgeListing)});
    CHECK(rewrite_rule_based("What is the capacity of the second one?", listing, names()).text ==
          "What is the capacity of LG 260 L Smart Inverter 3 Star?");
    CHECK_THROWS_AS(rewrite_rule_based("Is it frost free?", listing, names()), NoFocus);
    CHECK(rewrite_rule_based("Does it support 5G?", make_session("P100"), names()).text ==
          "Does iPhone 13 support 5G?");
}

TEST_CASE("NoFocus without a referent") {
    CHECK_THROWS_AS(rewrite_rule_based("Display size?", make_session(std::nullopt), names()), NoFocus);
    CHECK_THROWS_AS(rewrite_rule_based("How about iPhone 14?",
                                       make_session(std::nullopt, {make_turn(1, "hi", "hello")}), names()),
                    NoFocus);
    CHECK_THROWS_AS(rewrite_rule_based("   ", make_session("P100"), names()), Error);
}

TEST_CASE("turn-1 and fixed-point properties") {
    const auto empty = make_session(std::nullopt);
    for (const char* q : {"What is the battery size of iPhone 13?", "Does iPhone 14 support 5G?",
                          "Capacity of LG 242 L Frost Free 2 Star?"}) {
        auto out = rewrite_rule_based(q, empty, names());
        CHECK(out.text == q);
        CHECK(out.source == RewriteSource::builtin_rules);
        CHECK_NOTHROW(out.validate());
    }
    const auto s = make_session("P100", {make_turn(1, "Battery size?", "x",
                                                   "What is the battery size of iPhone 13?")});
    for (const char* q : {"Display size?", "Show me cases for this phone.", "How about iPhone 14?"}) {
        const auto once = rewrite_rule_based(q, s, names()).text;
        CHECK(rewrite_rule_based(once, s, names()).text == once);
    }
}

TEST_CASE("StandaloneQuery validation") {
    StandaloneQuery q{"What is it?", {"iPhone 13"}, RewriteSource::builtin_rules, ""};
    CHECK_THROWS_AS(q.validate(), Error);
    q.text = "";
    q.mentioned_products.clear();
    CHECK_THROWS_AS(q.validate(), Error);
}

namespace {

struct FixedProvider final : RewriteProvider {
    std::string reply;
    bool fail = false;
    std::string rewrite(const std::string&, const Session&, const NameCatalog&) override {
        if (fail) throw std::runtime_error("boom");
        return reply;
    }
};

}  // namespace

TEST_CASE("rewrite dispatch and fallback") {
    const auto s = make_session("P100");
    CHECK(rewrite("Display size?", s, names(), nullptr).text == "What is the display size of iPhone 13?");

    FixedProvider ok;
    ok.reply = "What is the display size of iPhone 13?";
    auto out = rewrite("Display size?", s, names(), &ok);
    CHECK(out.source == RewriteSource::external_provider);
    CHECK(out.mentioned_products == std::vector<std::string>{"iPhone 13"});

    FixedProvider empty;
    empty.reply = "  ";
    out = rewrite("Display size?", s, names(), &empty);
    CHECK(out.source == RewriteSource::builtin_rules);
    CHECK_FALSE(out.fallback_reason.empty());

    FixedProvider failing;
    failing.fail = true;
    CHECK_THROWS_AS(rewrite("Display size?", make_session(std::nullopt), names(), &failing),
                    ProviderUnavailable);
}

TEST_CASE("http rewrite provider: success, timeout fallback") {
    pqa::test::MockServer mock;
    Json seen;
    mock.server().Post("/rewrite", [&](const httplib::Request& req, httplib::Response& res) {
        seen = Json::parse(req.body);
        res.set_content(R"({"standalone_query": "What is the display size of iPhone 13?"})",
                        "application/json");
    });
    mock.server().Post("/slow", [](const httplib::Request&, httplib::Response& res) {
        std::this_thread::sleep_for(std::chrono::milliseconds(600));
        res.set_content(R"({"standalone_query": "late"})", "application/json");
    });
    mock.server().Post("/bad", [](const httplib::Request&, httplib::Response& res) {
        res.set_content(R"({"text": 1})", "application/json");
    });
    mock.start();

    const auto s = make_session("P100", {make_turn(1, "Battery size?", "3240 mAh")});
    HttpRewriteProvider good(mock.url("/rewrite"));
    auto out = rewrite("Display size?", s, names(), &good);
    CHECK(out.source == RewriteSource::external_provider);
    CHECK(seen["query"] == "Display size?");
    CHECK(seen["history"].size() == 1);
    CHECK(seen["history"][0]["user"] == "Battery size?");

    HttpRewriteProvider slow(mock.url("/slow"), std::chrono::milliseconds(150));
    out = rewrite("Display size?", s, names(), &slow);
    CHECK(out.source == RewriteSource::builtin_rules);
    CHECK(out.text == "What is the display size of iPhone 13?");

    HttpRewriteProvider bad(mock.url("/bad"));
    CHECK(rewrite("Display size?", s, names(), &bad).source == RewriteSource::builtin_rules);
}
