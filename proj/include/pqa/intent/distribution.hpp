#pragma once

#include <array>
#include <map>
#include <string>

#include "pqa/core/error.hpp"
#include "pqa/core/types.hpp"

namespace pqa::intent {

class InvalidDistribution : public Error {
public:
    using Error::Error;
};

/// Probabilities over the 13 taxonomy labels, summing to 1 within 1e-9.
class IntentDistribution {
public:
    using Values = std::array<double, kIntentCount>;

    /// Validates an already-normalized vector (taxonomy order).
    static IntentDistribution from_probabilities(const Values& p);
    /// Renormalizes nonnegative finite scores; throws when their sum is zero.
    static IntentDistribution from_scores(const Values& scores);
    /// Label -> score map, missing labels count as 0; unknown labels throw.
    static IntentDistribution from_label_scores(const std::map<std::string, double>& scores);

    double operator[](Intent i) const { return p_[IntentTaxonomy::index(i)]; }
    const Values& values() const { return p_; }
    Intent argmax() const;

private:
    Values p_{};
};

}  // namespace pqa::intent
