/// @file recall.hpp
/// @brief Recall@k benchmark: share of queries whose ground-truth segment
/// ranks within the top k candidates.

#pragma once

#include <functional>
#include <istream>
#include <set>
#include <string>
#include <vector>

#include "pqa/core/error.hpp"
#include "pqa/sts/embedding.hpp"

namespace pqa::retrieval {

class EmptyCases : public Error {
public:
    using Error::Error;
};

struct Candidate {
    std::string id;
    std::string text;
};

struct RecallBenchCase {
    std::string query;
    std::vector<Candidate> candidates;
    std::set<std::string> truth_ids;

    /// Throws Error on empty truth, unknown truth ids, or repeated candidate ids.
    void validate() const;
};

/// Similarity of a query and a candidate text; higher ranks first.
using PairScorer = std::function<double(const std::string& query, const std::string& text)>;

/// Scorer backed by cosine similarity of `embedder` outputs.
PairScorer embedding_scorer(const sts::Embedder& embedder);

/// Jaccard overlap of normalized token sets; the lexical baseline.
PairScorer lexical_overlap_scorer();

/// 1-based rank of the best-placed ground-truth candidate under (score desc, id asc).
std::size_t truth_rank(const RecallBenchCase& c, const PairScorer& scorer);

/// Throws EmptyCases for no cases and Error for k == 0.
double recall_at_k(const std::vector<RecallBenchCase>& cases, const PairScorer& scorer, std::size_t k);
double recall_at_k(const std::vector<RecallBenchCase>& cases, const sts::Embedder& embedder,
                   std::size_t k);

/// JSONL lines {"query", "candidates": [{"id", "text"}], "truth_ids": [...]}.
/// Throws ParseError naming the line.
std::vector<RecallBenchCase> read_recall_cases(std::istream& in);

}  // namespace pqa::retrieval
