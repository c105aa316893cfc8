#include "pqa/sts/provider.hpp"

#include <fstream>

#include "pqa/core/http_endpoint.hpp"
#include "pqa/sts/triplet.hpp"

namespace pqa::sts {

HttpEmbedder::HttpEmbedder(std::string url, std::size_t dim, std::chrono::milliseconds timeout)
    : url_(std::move(url)), dim_(dim), timeout_(timeout) {}

EmbeddingVector HttpEmbedder::embed(std::string_view text) const {
    const std::string s(text);
    return embed_batch(std::span<const std::string>(&s, 1)).front();
}

std::vector<EmbeddingVector> HttpEmbedder::embed_batch(std::span<const std::string> texts) const {
    Json body{{"texts", Json::array()}};
    for (const auto& t : texts) body["texts"].push_back(t);
    const Json reply = http_post_json(url_, body, timeout_);
    auto it = reply.find("vectors");
    if (it == reply.end() || !it->is_array() || it->size() != texts.size()) {
        throw HttpError(url_ + ": reply must carry one vector per text");
    }
    std::vector<EmbeddingVector> out;
    for (const auto& v : *it) {
        if (!v.is_array() || v.size() != dim_) {
            throw HttpError(url_ + ": expected vectors of dimension " + std::to_string(dim_));
        }
        std::vector<double> values;
        for (const auto& x : v) {
            if (!x.is_number()) throw HttpError(url_ + ": vector entry is not a number");
            values.push_back(x.get<double>());
        }
        out.push_back(l2_normalize(std::move(values)));
    }
    return out;
}

std::unique_ptr<Embedder> make_embedder(const PipelineConfig& config) {
    const auto dim = static_cast<std::size_t>(config.embedding_dim);
    if (!is_builtin(config.embedding_provider)) {
        return std::make_unique<HttpEmbedder>(config.embedding_provider, dim);
    }
    if (!config.sts_model.empty()) {
        std::ifstream in(config.sts_model);
        if (!in) throw IoError("cannot open embedder model " + config.sts_model);
        Json j;
        try {
            j = Json::parse(in);
        } catch (const Json::exception& e) {
            throw ParseError(config.sts_model + ": " + e.what());
        }
        auto model = LinearEmbedder::from_json(j);
        if (model.dim() != dim) {
            throw RangeError("embedding_dim", "does not match the model file dimension");
        }
        return std::make_unique<LinearEmbedder>(std::move(model));
    }
    return std::make_unique<HashedBowEmbedder>(dim);
}

}  // namespace pqa::sts
