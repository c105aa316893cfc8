/// @file softmax.hpp
/// @brief Bag-of-words multinomial logistic regression over the intent taxonomy.

#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pqa/core/json_io.hpp"
#include "pqa/core/matrix.hpp"
#include "pqa/intent/distribution.hpp"

namespace pqa::intent {

class EmptyDataset : public Error {
public:
    using Error::Error;
};

class UnknownLabel : public Error {
public:
    using Error::Error;
};

struct LabeledText {
    std::string text;
    std::string label;
};

/// (feature index, count); the bias feature is implicit.
using SparseFeatures = std::vector<std::pair<std::size_t, double>>;

struct Example {
    SparseFeatures features;
    Intent label;
};

struct SoftmaxTrainOptions {
    int epochs = 100;
    double learning_rate = 0.5;
    std::size_t batch_size = 8;
    std::uint64_t seed = 42;
};

class SoftmaxIntentModel {
public:
    SoftmaxIntentModel() = default;
    /// Zero weights over `vocabulary` (dense indices 0..n-1 in the given order).
    explicit SoftmaxIntentModel(std::vector<std::string> vocabulary);

    /// Unknown tokens are ignored.
    SparseFeatures featurize(std::string_view text) const;
    IntentDistribution predict(std::string_view text) const;
    IntentDistribution predict(const SparseFeatures& features) const;

    /// Mean cross-entropy over `batch`.
    double loss(const std::vector<Example>& batch) const;
    /// d loss / d weights, same shape as weights().
    Matrix gradient(const std::vector<Example>& batch) const;

    /// 13 x (|vocabulary| + 1); the last column is the bias.
    Matrix& weights() { return weights_; }
    const Matrix& weights() const { return weights_; }
    const std::map<std::string, std::size_t>& vocabulary() const { return index_; }

    Json to_json() const;
    static SoftmaxIntentModel from_json(const Json& j);

private:
    std::array<double, kIntentCount> logits(const SparseFeatures& x) const;

    std::map<std::string, std::size_t> index_;
    Matrix weights_{kIntentCount, 1};
};

/// Throws EmptyDataset or UnknownLabel. Mini-batch gradient descent on mean
/// cross-entropy, zero-initialized, batches shuffled with `options.seed`.
SoftmaxIntentModel train_softmax(const std::vector<LabeledText>& dataset,
                                 const SoftmaxTrainOptions& options = {});

/// JSONL lines {"text": ..., "label": ...}. Throws ParseError naming the line.
std::vector<LabeledText> read_intent_dataset(std::istream& in);

}  // namespace pqa::intent
