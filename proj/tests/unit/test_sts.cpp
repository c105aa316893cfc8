#include <doctest.h>

#include <httplib.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "gradcheck.hpp"
#include "mock_server.hpp"
#include "pqa/core/text.hpp"
#include "pqa/sts/provider.hpp"
#include "pqa/sts/triplet.hpp"
#include "support.hpp"

using namespace pqa;
using namespace pqa::sts;

namespace {

std::vector<Triplet> load_triplets() {
    std::ifstream in(pqa::test::fixture_path("triplets.jsonl"));
    return read_triplets(in);
}

}  // namespace

TEST_CASE("fnv1a64 reference values") {
    CHECK(fnv1a64("") == 14695981039346656037ULL);
    CHECK(fnv1a64("a") == 12638187200555641996ULL);
    CHECK(fnv1a64("battery") == 7285243182915468622ULL);
}

TEST_CASE("embed_hashed_bow matches the reference featurizer") {
    CHECK(embed_hashed_bow("", 64).is_zero());
    CHECK(embed_hashed_bow("", 64).dim() == 64);
    CHECK_THROWS_AS(embed_hashed_bow("x", 7), Error);
    const auto v = embed_hashed_bow("alpha beta gamma delta epsilon zeta eta theta", 8);
    const std::vector<double> expected = {0.0, 0.35355339059327373, 0.35355339059327373, -0.7071067811865475,
                                          0.0, 0.35355339059327373, 0.0, 0.35355339059327373};
    for (std::size_t i = 0; i < 8; ++i) CHECK(v[i] == doctest::Approx(expected[i]).epsilon(1e-15));
    const auto w = embed_hashed_bow("battery size battery", 16);
    CHECK(w[12] == doctest::Approx(0.4472135954999579).epsilon(1e-15));
    CHECK(w[14] == doctest::Approx(0.8944271909999159).epsilon(1e-15));
}

TEST_CASE("hashed cosine reference values") {
    auto cos_at = [](std::string_view a, std::string_view b, std::size_t dim) {
        return cosine(embed_hashed_bow(a, dim), embed_hashed_bow(b, dim));
    };
    CHECK(cos_at("battery size", "return policy", 1024) == 0.0);
    CHECK(cos_at("battery size", "Battery Size: 3240 mAh", 1024) == doctest::Approx(0.7071067811865476).epsilon(1e-15));
    CHECK(cos_at("What is the battery size of iPhone 13?", "Battery Size: 3240 mAh", 1024) ==
          doctest::Approx(0.3535533905932738).epsilon(1e-15));
    CHECK(cos_at("alpha beta gamma", "delta epsilon alpha", 8) == doctest::Approx(1.0 / 3).epsilon(1e-15));
    CHECK(cos_at("Café crème", "CAFÉ crème", 1024) == doctest::Approx(1.0));
    CHECK(cos_at("Café crème", "cafe creme", 1024) == 0.0);
    CHECK(cos_at("same text", "same text", 1024) == doctest::Approx(1.0));
}

TEST_CASE("cosine conventions") {
    const auto v = embed_hashed_bow("red dress", 64);
    std::vector<double> neg;
    for (double x : v.values()) neg.push_back(-x);
    CHECK(cosine(v, v) == doctest::Approx(1.0));
    CHECK(cosine(v, EmbeddingVector(neg)) == doctest::Approx(-1.0));
    CHECK(cosine(v, embed_hashed_bow("", 64)) == 0.0);
    CHECK_THROWS_AS(cosine(embed_hashed_bow("a", 64), embed_hashed_bow("a", 128)), DimMismatch);
}

TEST_CASE("token order does not change the vector") {
    std::mt19937_64 rng(2);
    const std::vector<std::string> words = {"red", "cotton", "dress", "size", "m", "fits", "well", "blue"};
    for (int i = 0; i < 200; ++i) {
        std::vector<std::string> toks;
        for (int j = 0, n = 1 + static_cast<int>(rng() % 7); j < n; ++j) toks.push_back(words[rng() % words.size()]);
        auto shuffled = toks;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        CHECK(embed_hashed_bow(join(toks, " "), 32) == embed_hashed_bow(join(shuffled, ", "), 32));
    }
}

TEST_CASE("cosine ranking equals negative squared distance ranking for unit vectors") {
    std::mt19937_64 rng(4);
    const std::vector<std::string> words = {"a", "b", "c", "d", "e", "f", "g"};
    auto text = [&] {
        std::string s;
        for (int j = 0, n = 1 + static_cast<int>(rng() % 4); j < n; ++j) s += words[rng() % words.size()] + " ";
        return s;
    };
    for (int i = 0; i < 300; ++i) {
        const auto q = embed_hashed_bow(text(), 16);
        const auto a = embed_hashed_bow(text(), 16);
        const auto b = embed_hashed_bow(text(), 16);
        auto d2 = [&](const EmbeddingVector& x) {
            double s = 0;
            for (std::size_t k = 0; k < 16; ++k) s += (q[k] - x[k]) * (q[k] - x[k]);
            return s;
        };
        CHECK(d2(a) == doctest::Approx(2 - 2 * cosine(q, a)));
        if (std::abs(cosine(q, a) - cosine(q, b)) > 1e-12) CHECK((cosine(q, a) > cosine(q, b)) == (d2(a) < d2(b)));
    }
}

TEST_CASE("triplet_loss examples") {
    pqa::test::TableEmbedder scalar(1, {{"q", {0.0}}, {"p1", {1.0}}, {"n3", {3.0}}, {"p2", {2.0}}, {"n1", {1.0}}});
    const std::vector<Triplet> first = {{"q", "p1", "n3"}};
    CHECK(triplet_loss(scalar, first, 1.0) == 0.0);
    const std::vector<Triplet> second = {{"q", "p2", "n1"}};
    CHECK(triplet_loss(scalar, second, 0.5) == 3.5);
    LinearEmbedder id(64, 0.5);
    const std::vector<Triplet> same = {{"red dress", "blue shirt", "blue shirt"}, {"a", "b c", "b c"}};
    CHECK(triplet_loss(id, same, 0.5) == 1.0);
    CHECK(triplet_loss(id, same, 0.0) == 0.0);
    CHECK_THROWS_AS(triplet_loss(id, std::vector<Triplet>{}, 0.5), EmptyBatch);
    CHECK_THROWS_AS(triplet_loss(id, same, -1.0), Error);
    CHECK_THROWS_AS((Triplet{"", "a", "b"}.validate()), Error);
}

TEST_CASE("triplet_loss is zero exactly when every margin holds") {
    std::mt19937_64 rng(6);
    const std::vector<std::string> words = {"red", "dress", "blue", "shirt", "size", "m"};
    LinearEmbedder id(16, 0.0);
    for (int i = 0; i < 200; ++i) {
        auto w = [&] { return words[rng() % words.size()] + " " + words[rng() % words.size()]; };
        std::vector<Triplet> b = {{w(), w(), w()}, {w(), w(), w()}};
        const double alpha = static_cast<double>(rng() % 4) / 4;
        const bool all = std::all_of(b.begin(), b.end(), [&](const Triplet& t) {
            return pqa::test::hinge_argument(id, t, alpha) <= 0.0;
        });
        const double loss = triplet_loss(id, b, alpha);
        CHECK(loss >= 0.0);
        CHECK((loss == 0.0) == all);
    }
}

TEST_CASE("triplet gradient matches finite differences") {
    std::mt19937_64 rng(8);
    std::normal_distribution<double> noise(0.0, 0.2);
    const std::vector<std::string> words = {"red", "dress", "blue", "shirt", "size", "m", "cotton"};
    int checked = 0;
    while (checked < 10) {
        Matrix p = Matrix::identity(8);
        for (auto& x : p.data()) x += noise(rng);
        LinearEmbedder e(p, 0.5);
        auto w = [&] { return words[rng() % words.size()] + " " + words[rng() % words.size()]; };
        std::vector<Triplet> b = {{w(), w(), w()}, {w(), w(), w()}};
        const bool away_from_kink = std::all_of(b.begin(), b.end(), [&](const Triplet& t) {
            return std::abs(pqa::test::hinge_argument(e, t, 0.5)) > 1e-3 && pqa::test::all_embeddable(e, t);
        });
        if (!away_from_kink || triplet_loss(e, b, 0.5) == 0.0) continue;
        const Matrix analytic = triplet_loss_gradient(e, b, 0.5);
        const Matrix numeric = pqa::test::numeric_gradient(e.projection(), [&] { return triplet_loss(e, b, 0.5); });
        CHECK(pqa::test::relative_error(analytic, numeric) < 1e-4);
        ++checked;
    }
}

TEST_CASE("train_triplet: flat region leaves the identity") {
    PipelineConfig c;
    c.embedding_dim = 64;
    const std::vector<Triplet> ok = {{"red dress", "red dress", "blue shoes"}};
    auto e = train_triplet(ok, c);
    CHECK(e.projection() == Matrix::identity(64));
    c.alpha_margin = 0.0;
    const std::vector<Triplet> same = {{"a", "b", "b"}, {"c", "d e", "d e"}};
    TripletTrainReport report;
    e = train_triplet(same, c, {}, &report);
    CHECK(e.projection() == Matrix::identity(64));
    CHECK(report.mean_loss == std::vector<double>{0.0});
    CHECK_THROWS_AS(train_triplet(std::vector<Triplet>{}, c), EmptyBatch);
}

TEST_CASE("train_triplet reduces the loss monotonically on the fixture") {
    const auto triplets = load_triplets();
    REQUIRE(triplets.size() == 50);
    PipelineConfig c;
    TripletTrainReport report;
    const auto e = train_triplet(triplets, c, {}, &report);
    REQUIRE(report.mean_loss.size() >= 2);
    CHECK(report.mean_loss.back() < report.mean_loss.front());
    for (std::size_t i = 1; i < report.mean_loss.size(); ++i) {
        CHECK(report.mean_loss[i] <= report.mean_loss[i - 1] + 1e-9);
    }
    CHECK(triplet_loss(e, triplets, c.alpha_margin) / 50 == doctest::Approx(report.mean_loss.back()));

    const auto copy = LinearEmbedder::from_json(e.to_json());
    CHECK(copy.projection() == e.projection());
    CHECK(copy.alpha() == e.alpha());
    const auto v = e.embed("red dress");
    CHECK(v.norm() == doctest::Approx(1.0));
}

TEST_CASE("LinearEmbedder construction checks") {
    CHECK_THROWS_AS(LinearEmbedder(Matrix(8, 9), 0.5), Error);
    CHECK_THROWS_AS(LinearEmbedder(4, 0.5), Error);
    CHECK_THROWS_AS(LinearEmbedder(8, -0.5), Error);
    LinearEmbedder id(32, 0.5);
    CHECK(id.embed("red dress") == embed_hashed_bow("red dress", 32));
}

TEST_CASE("read_triplets names the bad line") {
    std::istringstream in("{\"q\":\"a\",\"p\":\"b\",\"n\":\"c\"}\n{\"q\":\"a\"}\n");
    try {
        read_triplets(in);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("http embedder and provider selection") {
    pqa::test::MockServer mock;
    mock.server().Post("/embed", [](const httplib::Request& req, httplib::Response& res) {
        const auto body = Json::parse(req.body);
        Json vectors = Json::array();
        for (std::size_t i = 0; i < body["texts"].size(); ++i) vectors.push_back({3.0, 4.0, 0, 0, 0, 0, 0, 0});
        res.set_content(Json{{"vectors", vectors}}.dump(), "application/json");
    });
    mock.server().Post("/short", [](const httplib::Request&, httplib::Response& res) {
        res.set_content(R"({"vectors": [[1, 2]]})", "application/json");
    });
    mock.start();
    HttpEmbedder e(mock.url("/embed"), 8);
    const auto v = e.embed("x");
    CHECK(v[0] == doctest::Approx(0.6));
    CHECK(v[1] == doctest::Approx(0.8));
    const std::vector<std::string> texts = {"a", "b", "c"};
    CHECK(e.embed_batch(texts).size() == 3);
    HttpEmbedder bad(mock.url("/short"), 8);
    CHECK_THROWS(bad.embed("x"));

    PipelineConfig c;
    c.embedding_dim = 64;
    CHECK(dynamic_cast<HashedBowEmbedder*>(make_embedder(c).get()) != nullptr);
    c.embedding_provider = mock.url("/embed");
    c.embedding_dim = 8;
    CHECK(dynamic_cast<HttpEmbedder*>(make_embedder(c).get()) != nullptr);
}
