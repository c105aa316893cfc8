#include "pqa/intent/provider.hpp"

#include "pqa/core/http_endpoint.hpp"
#include "pqa/intent/keyword.hpp"

namespace pqa::intent {

IntentDistribution KeywordIntentProvider::classify(const std::string& standalone_query) {
    return classify_keyword(standalone_query);
}

IntentDistribution SoftmaxIntentProvider::classify(const std::string& standalone_query) {
    return model_.predict(standalone_query);
}

HttpIntentProvider::HttpIntentProvider(std::string url, std::chrono::milliseconds timeout)
    : url_(std::move(url)), timeout_(timeout) {}

IntentDistribution HttpIntentProvider::classify(const std::string& standalone_query) {
    const Json reply = http_post_json(url_, {{"standalone_query", standalone_query}}, timeout_);
    auto it = reply.find("probabilities");
    if (it == reply.end() || !it->is_object()) {
        throw HttpError(url_ + ": reply lacks a 'probabilities' object");
    }
    std::map<std::string, double> scores;
    for (const auto& [label, p] : it->items()) {
        if (!p.is_number()) throw HttpError(url_ + ": probability for '" + label + "' is not a number");
        scores[label] = p.get<double>();
    }
    return IntentDistribution::from_label_scores(scores);
}

}  // namespace pqa::intent
