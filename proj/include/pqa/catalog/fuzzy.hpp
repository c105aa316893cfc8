#pragma once

#include <cstddef>
#include <string_view>

namespace pqa::catalog {

/// Edit distance over Unicode code points.
std::size_t levenshtein(std::string_view a, std::string_view b);

/// Jaccard similarity of the normalized token sets; two empty sets give 1.0.
double token_set_jaccard(std::string_view a, std::string_view b);

/// 0.5 * token-set Jaccard + 0.5 * (1 - edit distance / longer length), both
/// computed on normalized text. Symmetric, in [0, 1], and 1.0 exactly when the
/// normalized forms are equal (two empty strings included).
double fuzzy_score(std::string_view a, std::string_view b);

}  // namespace pqa::catalog
