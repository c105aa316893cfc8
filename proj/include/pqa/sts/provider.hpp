#pragma once

#include <chrono>
#include <memory>
#include <string>

#include "pqa/core/config.hpp"
#include "pqa/sts/embedding.hpp"

namespace pqa::sts {

/// POST {texts: [...]} -> {vectors: [[...], ...]}. Each vector must have
/// `dim` entries; replies are L2-normalized on receipt. Failures throw HttpError.
class HttpEmbedder final : public Embedder {
public:
    HttpEmbedder(std::string url, std::size_t dim,
                 std::chrono::milliseconds timeout = std::chrono::seconds(5));

    std::size_t dim() const override { return dim_; }
    EmbeddingVector embed(std::string_view text) const override;
    std::vector<EmbeddingVector> embed_batch(std::span<const std::string> texts) const override;

private:
    std::string url_;
    std::size_t dim_;
    std::chrono::milliseconds timeout_;
};

/// Builds the embedder selected by config: an HttpEmbedder for a URL, else the
/// model file in config.sts_model when set, else hashed bag-of-words.
std::unique_ptr<Embedder> make_embedder(const PipelineConfig& config);

}  // namespace pqa::sts
