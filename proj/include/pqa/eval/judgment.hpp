/// @file judgment.hpp
/// @brief Per-query judgments and their S1-S4 scenario classification.
///
///                  answered   IDK
///   sufficient        S1       S4
///   insufficient      S3       S2
///
/// "partial" sufficiency counts as sufficient.

#pragma once

#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "pqa/core/error.hpp"

namespace pqa::eval {

class SchemaError : public Error {
public:
    SchemaError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

enum class Sufficiency { full, partial, none };
enum class AnswerKind { answer, idk };
enum class Scenario { S1, S2, S3, S4 };

std::string_view to_string(Sufficiency s);
std::string_view to_string(AnswerKind k);
std::string_view to_string(Scenario s);

struct JudgmentRecord {
    std::string query_id;
    /// Intent label as written in the judgment file.
    std::string intent;
    Sufficiency context_sufficiency = Sufficiency::none;
    AnswerKind answer_kind = AnswerKind::idk;
    std::optional<bool> factually_correct;
    std::optional<bool> complete;

    /// Throws Error unless the two booleans are present exactly for answers.
    void validate() const;

    bool sufficient() const { return context_sufficiency != Sufficiency::none; }
};

struct ScenarioLabel {
    Scenario scenario = Scenario::S2;
    std::optional<bool> s1_good;
    std::optional<bool> s1_factually_correct;
    std::optional<bool> s1_complete;
};

ScenarioLabel classify_scenario(const JudgmentRecord& record);

/// One JSON object per non-blank line. Throws SchemaError with the 1-based line.
std::vector<JudgmentRecord> read_judgments(std::istream& in);

}  // namespace pqa::eval
