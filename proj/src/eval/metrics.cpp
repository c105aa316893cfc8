#include "pqa/eval/metrics.hpp"

namespace pqa::eval {
namespace {

std::optional<double> ratio(std::size_t num, std::size_t den) {
    if (den == 0) return std::nullopt;
    return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

void EvalCounts::add(const JudgmentRecord& record) {
    ++M;
    if (record.sufficient()) ++N_answerable;
    const ScenarioLabel label = classify_scenario(record);
    switch (label.scenario) {
        case Scenario::S1:
            ++N_S1;
            N_S1_FC += *label.s1_factually_correct;
            N_S1_Comp += *label.s1_complete;
            if (*label.s1_good) ++N_S1_Good;
            else ++N_S1_Bad;
            break;
        case Scenario::S2: ++N_S2; break;
        case Scenario::S3: ++N_S3; break;
        case Scenario::S4: ++N_S4; break;
    }
}

EvalCounts& EvalCounts::operator+=(const EvalCounts& o) {
    M += o.M;
    N_S1 += o.N_S1;
    N_S2 += o.N_S2;
    N_S3 += o.N_S3;
    N_S4 += o.N_S4;
    N_S1_FC += o.N_S1_FC;
    N_S1_Comp += o.N_S1_Comp;
    N_S1_Good += o.N_S1_Good;
    N_S1_Bad += o.N_S1_Bad;
    N_answerable += o.N_answerable;
    return *this;
}

GroupedCounts aggregate(std::span<const JudgmentRecord> records) {
    GroupedCounts out;
    for (const auto& r : records) {
        out.overall.add(r);
        out.by_intent[r.intent].add(r);
    }
    return out;
}

MetricValues compute_metrics(const EvalCounts& c) {
    MetricValues m;
    m.context_coverage = ratio(c.N_answerable, c.M);
    m.grounded_accuracy = ratio(c.N_S1_FC, c.N_S1);
    m.completeness = ratio(c.N_S1_Comp, c.N_S1);
    m.precision = ratio(c.N_S1_Good, c.N_S1 + c.N_S3);
    m.recall = ratio(c.N_S1_Good, c.N_S1 + c.N_S4);
    m.accuracy = ratio(c.N_S1_Good + c.N_S2, c.M);
    m.hallucination_rate = ratio(c.N_S3 + c.N_S1_Bad, c.M);
    return m;
}

EvalReport build_report(const GroupedCounts& counts) {
    EvalReport r;
    r.overall_counts = counts.overall;
    r.overall = compute_metrics(counts.overall);
    r.intent_counts = counts.by_intent;
    for (const auto& [intent, c] : counts.by_intent) r.by_intent[intent] = compute_metrics(c);
    return r;
}

}  // namespace pqa::eval
