#include "pqa/intent/softmax.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "pqa/core/text.hpp"

namespace pqa::intent {

SoftmaxIntentModel::SoftmaxIntentModel(std::vector<std::string> vocabulary)
    : weights_(kIntentCount, vocabulary.size() + 1) {
    for (std::size_t i = 0; i < vocabulary.size(); ++i) index_.emplace(std::move(vocabulary[i]), i);
}

SparseFeatures SoftmaxIntentModel::featurize(std::string_view text) const {
    std::map<std::size_t, double> counts;
    for (const auto& token : tokenize(text)) {
        if (auto it = index_.find(token); it != index_.end()) counts[it->second] += 1.0;
    }
    return {counts.begin(), counts.end()};
}

std::array<double, kIntentCount> SoftmaxIntentModel::logits(const SparseFeatures& x) const {
    std::array<double, kIntentCount> z{};
    const std::size_t bias = weights_.cols() - 1;
    for (std::size_t c = 0; c < kIntentCount; ++c) {
        double s = weights_(c, bias);
        for (const auto& [j, v] : x) s += weights_(c, j) * v;
        z[c] = s;
    }
    return z;
}

namespace {

std::array<double, kIntentCount> softmax(const std::array<double, kIntentCount>& z) {
    const double top = *std::max_element(z.begin(), z.end());
    std::array<double, kIntentCount> p{};
    double sum = 0.0;
    for (std::size_t c = 0; c < z.size(); ++c) {
        p[c] = std::exp(z[c] - top);
        sum += p[c];
    }
    for (double& v : p) v /= sum;
    return p;
}

}  // namespace

IntentDistribution SoftmaxIntentModel::predict(const SparseFeatures& features) const {
    return IntentDistribution::from_scores(softmax(logits(features)));
}

IntentDistribution SoftmaxIntentModel::predict(std::string_view text) const {
    return predict(featurize(text));
}

double SoftmaxIntentModel::loss(const std::vector<Example>& batch) const {
    if (batch.empty()) return 0.0;
    double total = 0.0;
    for (const auto& ex : batch) {
        const auto z = logits(ex.features);
        const double top = *std::max_element(z.begin(), z.end());
        double lse = 0.0;
        for (double v : z) lse += std::exp(v - top);
        total += top + std::log(lse) - z[IntentTaxonomy::index(ex.label)];
    }
    return total / static_cast<double>(batch.size());
}

Matrix SoftmaxIntentModel::gradient(const std::vector<Example>& batch) const {
    Matrix g(weights_.rows(), weights_.cols());
    if (batch.empty()) return g;
    const double scale = 1.0 / static_cast<double>(batch.size());
    const std::size_t bias = weights_.cols() - 1;
    for (const auto& ex : batch) {
        auto p = softmax(logits(ex.features));
        p[IntentTaxonomy::index(ex.label)] -= 1.0;
        for (std::size_t c = 0; c < kIntentCount; ++c) {
            const double d = p[c] * scale;
            g(c, bias) += d;
            for (const auto& [j, v] : ex.features) g(c, j) += d * v;
        }
    }
    return g;
}

Json SoftmaxIntentModel::to_json() const {
    std::vector<std::string> vocab(index_.size());
    for (const auto& [token, i] : index_) vocab[i] = token;
    Json rows = Json::array();
    for (std::size_t c = 0; c < weights_.rows(); ++c) {
        auto r = weights_.row(c);
        rows.push_back(std::vector<double>(r.begin(), r.end()));
    }
    return Json{{"vocabulary", vocab}, {"weights", rows}};
}

SoftmaxIntentModel SoftmaxIntentModel::from_json(const Json& j) {
    SoftmaxIntentModel model(j.at("vocabulary").get<std::vector<std::string>>());
    const auto& rows = j.at("weights");
    if (rows.size() != kIntentCount) throw ParseError("softmax model: expected 13 weight rows");
    for (std::size_t c = 0; c < kIntentCount; ++c) {
        auto values = rows[c].get<std::vector<double>>();
        if (values.size() != model.weights_.cols()) throw ParseError("softmax model: weight row width mismatch");
        for (std::size_t k = 0; k < values.size(); ++k) {
            if (!std::isfinite(values[k])) throw ParseError("softmax model: non-finite weight");
            model.weights_(c, k) = values[k];
        }
    }
    return model;
}

SoftmaxIntentModel train_softmax(const std::vector<LabeledText>& dataset,
                                 const SoftmaxTrainOptions& options) {
    if (dataset.empty()) throw EmptyDataset("intent training set is empty");

    std::vector<Intent> labels;
    std::vector<std::string> vocabulary;
    std::map<std::string, std::size_t> seen;
    for (const auto& row : dataset) {
        auto label = parse_intent(row.label);
        if (!label) throw UnknownLabel("unknown intent label '" + row.label + "'");
        labels.push_back(*label);
        for (auto& token : tokenize(row.text)) {
            if (seen.emplace(token, vocabulary.size()).second) vocabulary.push_back(token);
        }
    }

    SoftmaxIntentModel model(std::move(vocabulary));
    std::vector<Example> examples;
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        examples.push_back({model.featurize(dataset[i].text), labels[i]});
    }

    std::mt19937_64 rng(options.seed);
    std::vector<std::size_t> order(examples.size());
    std::iota(order.begin(), order.end(), 0);
    const std::size_t batch_size = std::max<std::size_t>(1, options.batch_size);

    for (int epoch = 0; epoch < options.epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t start = 0; start < order.size(); start += batch_size) {
            std::vector<Example> batch;
            for (std::size_t k = start; k < std::min(order.size(), start + batch_size); ++k) {
                batch.push_back(examples[order[k]]);
            }
            const Matrix g = model.gradient(batch);
            auto& w = model.weights().data();
            for (std::size_t k = 0; k < w.size(); ++k) w[k] -= options.learning_rate * g.data()[k];
        }
    }
    return model;
}

std::vector<LabeledText> read_intent_dataset(std::istream& in) {
    std::vector<LabeledText> out;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            const Json j = Json::parse(line);
            out.push_back({j.at("text").get<std::string>(), j.at("label").get<std::string>()});
        } catch (const nlohmann::json::exception& e) {
            throw ParseError("line " + std::to_string(number) + ": " + e.what());
        }
    }
    return out;
}

}  // namespace pqa::intent
