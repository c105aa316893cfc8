#pragma once

#include <string>
#include <string_view>

#include "pqa/core/json_io.hpp"
#include "pqa/eval/metrics.hpp"

namespace pqa::eval {

class UnknownFormat : public Error {
public:
    using Error::Error;
};

/// Rendering of an undefined metric in the text table.
inline constexpr std::string_view kUndefinedCell = "—";

Json report_to_json(const EvalReport& report);
/// Inverse of report_to_json. Throws ParseError.
EvalReport report_from_json(const Json& j);

/// Aligned text table: one row per intent, then an "overall" row; values at
/// four decimals.
std::string report_table(const EvalReport& report);

/// format is "json" or "table"; anything else throws UnknownFormat.
std::string emit_report(const EvalReport& report, std::string_view format);

}  // namespace pqa::eval
