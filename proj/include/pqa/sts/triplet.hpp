/// @file triplet.hpp
/// @brief Margin-based triplet objective and a trainable linear projection
/// over hashed bag-of-words features.
///
/// Loss for a batch: sum_i max(0, |f(q_i) - f(p_i)|^2 - |f(q_i) - f(n_i)|^2 + alpha).

#pragma once

#include <cstdint>
#include <istream>
#include <span>
#include <string>
#include <vector>

#include "pqa/core/config.hpp"
#include "pqa/core/json_io.hpp"
#include "pqa/core/matrix.hpp"
#include "pqa/sts/embedding.hpp"

namespace pqa::sts {

class EmptyBatch : public Error {
public:
    using Error::Error;
};

class DivergenceError : public Error {
public:
    using Error::Error;
};

struct Triplet {
    std::string query;
    std::string positive;
    std::string negative;

    /// Throws Error when any text is empty.
    void validate() const;
};

/// f(x) = normalize(P h(x)), h the unit hashed bag-of-words vector.
class LinearEmbedder final : public Embedder {
public:
    /// Identity projection: embeds exactly like HashedBowEmbedder.
    LinearEmbedder(std::size_t dim, double alpha);
    LinearEmbedder(Matrix projection, double alpha);

    std::size_t dim() const override { return projection_.rows(); }
    EmbeddingVector embed(std::string_view text) const override;

    const Matrix& projection() const { return projection_; }
    Matrix& projection() { return projection_; }
    double alpha() const { return alpha_; }

    /// Only columns that differ from the identity are stored.
    Json to_json() const;
    static LinearEmbedder from_json(const Json& j);

private:
    Matrix projection_;
    double alpha_;
};

/// Sum over the batch of the hinge above, with squared Euclidean distances on
/// embedder outputs. Throws EmptyBatch; alpha must be >= 0.
double triplet_loss(const Embedder& embedder, std::span<const Triplet> batch, double alpha);

/// Gradient of triplet_loss with respect to every projection entry.
/// Subgradient 0 where the hinge argument is exactly 0.
Matrix triplet_loss_gradient(const LinearEmbedder& embedder, std::span<const Triplet> batch,
                             double alpha);

struct TripletTrainOptions {
    int epochs = 30;
    double learning_rate = 0.5;
    /// Step halvings tried per epoch before training stops.
    int max_backtracks = 30;
    std::uint64_t seed = 42;
};

struct TripletTrainReport {
    /// Mean loss before training, then after each completed epoch.
    std::vector<double> mean_loss;
};

/// Full-batch gradient descent on the mean loss from the identity projection.
/// A step is accepted only if the mean loss does not increase (the step is
/// halved otherwise), so the recorded losses are non-increasing. Uses
/// config.embedding_dim and config.alpha_margin. Throws EmptyBatch or
/// DivergenceError.
LinearEmbedder train_triplet(std::span<const Triplet> triplets, const PipelineConfig& config,
                             const TripletTrainOptions& options = {},
                             TripletTrainReport* report = nullptr);

/// JSONL lines {"q": ..., "p": ..., "n": ...}. Throws ParseError naming the line.
std::vector<Triplet> read_triplets(std::istream& in);

}  // namespace pqa::sts
