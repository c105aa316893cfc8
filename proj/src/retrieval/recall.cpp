#include "pqa/retrieval/recall.hpp"

#include <algorithm>

#include "pqa/core/json_io.hpp"
#include "pqa/core/text.hpp"

namespace pqa::retrieval {

void RecallBenchCase::validate() const {
    if (truth_ids.empty()) throw Error("recall case has no ground-truth ids");
    std::set<std::string> ids;
    for (const auto& c : candidates) {
        if (!ids.insert(c.id).second) throw Error("repeated candidate id " + c.id);
    }
    for (const auto& t : truth_ids) {
        if (!ids.contains(t)) throw Error("ground-truth id " + t + " is not a candidate");
    }
}

PairScorer embedding_scorer(const sts::Embedder& embedder) {
    return [&embedder](const std::string& query, const std::string& text) {
        return sts::cosine(embedder.embed(query), embedder.embed(text));
    };
}

PairScorer lexical_overlap_scorer() {
    return [](const std::string& query, const std::string& text) {
        const auto a = tokenize(query);
        const auto b = tokenize(text);
        const std::set<std::string> sa(a.begin(), a.end());
        const std::set<std::string> sb(b.begin(), b.end());
        if (sa.empty() && sb.empty()) return 0.0;
        std::size_t common = 0;
        for (const auto& t : sa) common += sb.contains(t);
        return static_cast<double>(common) / static_cast<double>(sa.size() + sb.size() - common);
    };
}

std::size_t truth_rank(const RecallBenchCase& c, const PairScorer& scorer) {
    std::vector<std::pair<double, const std::string*>> scored;
    scored.reserve(c.candidates.size());
    for (const auto& cand : c.candidates) scored.emplace_back(scorer(c.query, cand.text), &cand.id);
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return *a.second < *b.second;
    });
    for (std::size_t i = 0; i < scored.size(); ++i) {
        if (c.truth_ids.contains(*scored[i].second)) return i + 1;
    }
    return scored.size() + 1;
}

double recall_at_k(const std::vector<RecallBenchCase>& cases, const PairScorer& scorer, std::size_t k) {
    if (cases.empty()) throw EmptyCases("recall needs at least one case");
    if (k == 0) throw Error("k must be at least 1");
    std::size_t hits = 0;
    for (const auto& c : cases) hits += truth_rank(c, scorer) <= k;
    return static_cast<double>(hits) / static_cast<double>(cases.size());
}

double recall_at_k(const std::vector<RecallBenchCase>& cases, const sts::Embedder& embedder,
                   std::size_t k) {
    return recall_at_k(cases, embedding_scorer(embedder), k);
}

std::vector<RecallBenchCase> read_recall_cases(std::istream& in) {
    std::vector<RecallBenchCase> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            const Json j = Json::parse(line);
            RecallBenchCase c;
            c.query = j.at("query").get<std::string>();
            for (const auto& cand : j.at("candidates")) {
                c.candidates.push_back({cand.at("id").get<std::string>(), cand.at("text").get<std::string>()});
            }
            for (const auto& id : j.at("truth_ids")) c.truth_ids.insert(id.get<std::string>());
            c.validate();
            out.push_back(std::move(c));
        } catch (const std::exception& e) {
            throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return out;
}

}  // namespace pqa::retrieval
