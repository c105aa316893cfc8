#pragma once

#include <chrono>
#include <memory>
#include <string>

#include "pqa/intent/distribution.hpp"
#include "pqa/intent/softmax.hpp"

namespace pqa::intent {

class IntentProvider {
public:
    virtual ~IntentProvider() = default;
    virtual IntentDistribution classify(const std::string& standalone_query) = 0;
};

class KeywordIntentProvider final : public IntentProvider {
public:
    IntentDistribution classify(const std::string& standalone_query) override;
};

class SoftmaxIntentProvider final : public IntentProvider {
public:
    explicit SoftmaxIntentProvider(SoftmaxIntentModel model) : model_(std::move(model)) {}
    IntentDistribution classify(const std::string& standalone_query) override;

private:
    SoftmaxIntentModel model_;
};

/// POST {standalone_query} -> {probabilities: {label: p}}; the reply is
/// renormalized, missing labels count as zero, unknown labels are an error.
class HttpIntentProvider final : public IntentProvider {
public:
    explicit HttpIntentProvider(std::string url,
                                std::chrono::milliseconds timeout = std::chrono::seconds(2));
    IntentDistribution classify(const std::string& standalone_query) override;

private:
    std::string url_;
    std::chrono::milliseconds timeout_;
};

}  // namespace pqa::intent
