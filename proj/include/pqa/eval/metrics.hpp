#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>

#include "pqa/eval/judgment.hpp"

namespace pqa::eval {

struct EvalCounts {
    std::size_t M = 0;
    std::size_t N_S1 = 0, N_S2 = 0, N_S3 = 0, N_S4 = 0;
    std::size_t N_S1_FC = 0;
    std::size_t N_S1_Comp = 0;
    std::size_t N_S1_Good = 0;
    std::size_t N_S1_Bad = 0;
    /// Context at least partially sufficient.
    std::size_t N_answerable = 0;

    void add(const JudgmentRecord& record);
    EvalCounts& operator+=(const EvalCounts& other);

    friend bool operator==(const EvalCounts&, const EvalCounts&) = default;
};

struct GroupedCounts {
    EvalCounts overall;
    /// Keyed by the judgment's intent label.
    std::map<std::string, EvalCounts> by_intent;
};

GroupedCounts aggregate(std::span<const JudgmentRecord> records);

/// Undefined (nullopt) whenever the denominator is zero.
struct MetricValues {
    std::optional<double> context_coverage;   // N_answerable / M
    std::optional<double> grounded_accuracy;  // N_S1_FC / N_S1
    std::optional<double> completeness;       // N_S1_Comp / N_S1
    std::optional<double> precision;          // N_S1_Good / (N_S1 + N_S3)
    std::optional<double> recall;             // N_S1_Good / (N_S1 + N_S4)
    std::optional<double> accuracy;           // (N_S1_Good + N_S2) / M
    std::optional<double> hallucination_rate; // (N_S3 + N_S1_Bad) / M

    friend bool operator==(const MetricValues&, const MetricValues&) = default;
};

MetricValues compute_metrics(const EvalCounts& counts);

struct EvalReport {
    EvalCounts overall_counts;
    MetricValues overall;
    std::map<std::string, EvalCounts> intent_counts;
    std::map<std::string, MetricValues> by_intent;

    friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

EvalReport build_report(const GroupedCounts& counts);

}  // namespace pqa::eval
