#include "pqa/eval/judgment.hpp"

#include "pqa/core/json_io.hpp"

namespace pqa::eval {

std::string_view to_string(Sufficiency s) {
    switch (s) {
        case Sufficiency::full: return "full";
        case Sufficiency::partial: return "partial";
        case Sufficiency::none: return "none";
    }
    return "none";
}

std::string_view to_string(AnswerKind k) { return k == AnswerKind::answer ? "answer" : "idk"; }

std::string_view to_string(Scenario s) {
    static constexpr std::string_view names[] = {"S1", "S2", "S3", "S4"};
    return names[static_cast<int>(s)];
}

void JudgmentRecord::validate() const {
    const bool answered = answer_kind == AnswerKind::answer;
    if (answered != factually_correct.has_value() || answered != complete.has_value()) {
        throw Error("factually_correct and complete are required for answers and forbidden for idk");
    }
}

ScenarioLabel classify_scenario(const JudgmentRecord& r) {
    ScenarioLabel out;
    const bool answered = r.answer_kind == AnswerKind::answer;
    if (r.sufficient() && answered) {
        out.scenario = Scenario::S1;
        out.s1_factually_correct = r.factually_correct.value_or(false);
        out.s1_complete = r.complete.value_or(false);
        out.s1_good = *out.s1_factually_correct && *out.s1_complete;
    } else if (!r.sufficient() && !answered) {
        out.scenario = Scenario::S2;
    } else if (!r.sufficient()) {
        out.scenario = Scenario::S3;
    } else {
        out.scenario = Scenario::S4;
    }
    return out;
}

std::vector<JudgmentRecord> read_judgments(std::istream& in) {
    std::vector<JudgmentRecord> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            const Json j = Json::parse(line);
            if (!j.is_object()) throw Error("expected a JSON object");
            JudgmentRecord r;
            r.query_id = j.at("query_id").get<std::string>();
            r.intent = j.at("intent").get<std::string>();
            const auto suff = j.at("context_sufficiency").get<std::string>();
            if (suff == "full") r.context_sufficiency = Sufficiency::full;
            else if (suff == "partial") r.context_sufficiency = Sufficiency::partial;
            else if (suff == "none") r.context_sufficiency = Sufficiency::none;
            else throw Error("context_sufficiency must be full, partial or none");
            const auto kind = j.at("answer_kind").get<std::string>();
            if (kind == "answer") r.answer_kind = AnswerKind::answer;
            else if (kind == "idk") r.answer_kind = AnswerKind::idk;
            else throw Error("answer_kind must be answer or idk");
            for (auto [key, field] : {std::pair{"factually_correct", &r.factually_correct},
                                      std::pair{"complete", &r.complete}}) {
                auto it = j.find(key);
                if (it != j.end() && !it->is_null()) *field = it->get<bool>();
            }
            r.validate();
            out.push_back(std::move(r));
        } catch (const SchemaError&) {
            throw;
        } catch (const std::exception& e) {
            throw SchemaError(line_no, e.what());
        }
    }
    return out;
}

}  // namespace pqa::eval
