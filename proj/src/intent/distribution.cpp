#include "pqa/intent/distribution.hpp"

#include <cmath>
#include <numeric>

namespace pqa::intent {

IntentDistribution IntentDistribution::from_probabilities(const Values& p) {
    double sum = 0.0;
    for (double v : p) {
        if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
            throw InvalidDistribution("probability outside [0, 1]");
        }
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw InvalidDistribution("probabilities sum to " + std::to_string(sum));
    }
    IntentDistribution d;
    d.p_ = p;
    return d;
}

IntentDistribution IntentDistribution::from_scores(const Values& scores) {
    double sum = 0.0;
    for (double v : scores) {
        if (!std::isfinite(v) || v < 0.0) throw InvalidDistribution("scores must be finite and nonnegative");
        sum += v;
    }
    if (!(sum > 0.0)) throw InvalidDistribution("scores sum to zero");
    IntentDistribution d;
    for (std::size_t i = 0; i < scores.size(); ++i) d.p_[i] = scores[i] / sum;
    return d;
}

IntentDistribution IntentDistribution::from_label_scores(const std::map<std::string, double>& scores) {
    Values v{};
    for (const auto& [label, score] : scores) {
        auto intent = parse_intent(label);
        if (!intent) throw InvalidDistribution("unknown intent label '" + label + "'");
        v[IntentTaxonomy::index(*intent)] = score;
    }
    return from_scores(v);
}

Intent IntentDistribution::argmax() const {
    std::size_t best = 0;
    for (std::size_t i = 1; i < p_.size(); ++i) {
        if (p_[i] > p_[best]) best = i;
    }
    return IntentTaxonomy::labels[best];
}

}  // namespace pqa::intent
