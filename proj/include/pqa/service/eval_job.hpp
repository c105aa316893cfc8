#pragma once

#include <string>

#include "pqa/eval/report.hpp"

namespace pqa::service {

/// Reads a judgment file and builds the report; per-intent rows only when
/// `group_by_intent`. Throws IoError or eval::SchemaError.
eval::EvalReport run_eval_job(const std::string& judgments_path, bool group_by_intent = true);

}  // namespace pqa::service
