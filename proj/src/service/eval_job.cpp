#include "pqa/service/eval_job.hpp"

#include <fstream>

namespace pqa::service {

eval::EvalReport run_eval_job(const std::string& judgments_path, bool group_by_intent) {
    std::ifstream in(judgments_path);
    if (!in) throw IoError("cannot open judgments " + judgments_path);
    const auto records = eval::read_judgments(in);
    auto counts = eval::aggregate(records);
    if (!group_by_intent) counts.by_intent.clear();
    return eval::build_report(counts);
}

}  // namespace pqa::service
