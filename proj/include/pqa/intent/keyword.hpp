#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pqa/intent/distribution.hpp"

namespace pqa::intent {

/// Pseudo-count added to every label once any lexicon phrase matched.
inline constexpr double kKeywordPseudoCount = 0.03;
/// Non-decision mass when nothing matched; the rest is uniform over decision labels.
inline constexpr double kNoMatchNonDecisionMass = 0.6;
inline constexpr int kKeywordLexiconVersion = 1;

struct LexiconEntry {
    Intent intent;
    std::vector<std::string_view> phrases;
};

const std::vector<LexiconEntry>& keyword_lexicon();

/// Number of phrase occurrences per label (taxonomy order), matched on
/// normalized token boundaries.
IntentDistribution::Values keyword_counts(std::string_view text);

/// (count + pseudo-count) normalized; no match gives the fixed fallback.
IntentDistribution classify_keyword(std::string_view text);

}  // namespace pqa::intent
