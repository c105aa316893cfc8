#include "pqa/catalog/fuzzy.hpp"

#include <unicode/utf8.h>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "pqa/core/text.hpp"

namespace pqa::catalog {
namespace {

std::vector<int32_t> code_points(std::string_view s) {
    std::vector<int32_t> out;
    const auto* bytes = reinterpret_cast<const uint8_t*>(s.data());
    const auto n = static_cast<int32_t>(s.size());
    for (int32_t i = 0; i < n;) {
        UChar32 c;
        U8_NEXT(bytes, i, n, c);
        out.push_back(c);
    }
    return out;
}

}  // namespace

std::size_t levenshtein(std::string_view a, std::string_view b) {
    const auto x = code_points(a);
    const auto y = code_points(b);
    std::vector<std::size_t> row(y.size() + 1);
    for (std::size_t j = 0; j <= y.size(); ++j) row[j] = j;
    for (std::size_t i = 1; i <= x.size(); ++i) {
        std::size_t diag = row[0];
        row[0] = i;
        for (std::size_t j = 1; j <= y.size(); ++j) {
            const std::size_t up = row[j];
            row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (x[i - 1] == y[j - 1] ? 0 : 1)});
            diag = up;
        }
    }
    return row[y.size()];
}

double token_set_jaccard(std::string_view a, std::string_view b) {
    const auto ta = tokenize(a);
    const auto tb = tokenize(b);
    const std::set<std::string> sa(ta.begin(), ta.end());
    const std::set<std::string> sb(tb.begin(), tb.end());
    if (sa.empty() && sb.empty()) return 1.0;
    std::size_t common = 0;
    for (const auto& t : sa) common += sb.count(t);
    return static_cast<double>(common) / static_cast<double>(sa.size() + sb.size() - common);
}

double fuzzy_score(std::string_view a, std::string_view b) {
    const std::string na = normalize_text(a);
    const std::string nb = normalize_text(b);
    if (na == nb) return 1.0;
    const std::size_t longest = std::max(code_points(na).size(), code_points(nb).size());
    const double edit = 1.0 - static_cast<double>(levenshtein(na, nb)) / static_cast<double>(longest);
    return 0.5 * token_set_jaccard(na, nb) + 0.5 * edit;
}

}  // namespace pqa::catalog
