#include "pqa/eval/report.hpp"

#include <array>
#include <cstdio>
#include <vector>

namespace pqa::eval {
namespace {

using Field = std::optional<double> MetricValues::*;
using Count = std::size_t EvalCounts::*;

// JSON key, table column, member.
struct MetricColumn {
    const char* key;
    const char* column;
    Field field;
};

constexpr std::array<MetricColumn, 7> kMetricColumns = {{
    {"context_coverage", "Coverage", &MetricValues::context_coverage},
    {"precision", "Precision", &MetricValues::precision},
    {"recall", "Recall", &MetricValues::recall},
    {"hallucination_rate", "Hallucination", &MetricValues::hallucination_rate},
    {"accuracy", "Accuracy", &MetricValues::accuracy},
    {"grounded_accuracy", "Grounded", &MetricValues::grounded_accuracy},
    {"completeness", "Completeness", &MetricValues::completeness},
}};

constexpr std::array<std::pair<const char*, Count>, 10> kCountFields = {{
    {"M", &EvalCounts::M},
    {"N_S1", &EvalCounts::N_S1},
    {"N_S2", &EvalCounts::N_S2},
    {"N_S3", &EvalCounts::N_S3},
    {"N_S4", &EvalCounts::N_S4},
    {"N_S1_FC", &EvalCounts::N_S1_FC},
    {"N_S1_Comp", &EvalCounts::N_S1_Comp},
    {"N_S1_Good", &EvalCounts::N_S1_Good},
    {"N_S1_Bad", &EvalCounts::N_S1_Bad},
    {"N_answerable", &EvalCounts::N_answerable},
}};

Json group_json(const EvalCounts& c, const MetricValues& m) {
    Json counts = Json::object();
    for (const auto& [key, field] : kCountFields) counts[key] = c.*field;
    Json metrics = Json::object();
    for (const auto& col : kMetricColumns) {
        const auto& v = m.*col.field;
        metrics[col.key] = v ? Json(*v) : Json(nullptr);
    }
    return {{"counts", std::move(counts)}, {"metrics", std::move(metrics)}};
}

void group_from_json(const Json& j, EvalCounts& c, MetricValues& m) {
    for (const auto& [key, field] : kCountFields) c.*field = j.at("counts").at(key).get<std::size_t>();
    for (const auto& col : kMetricColumns) {
        const auto& v = j.at("metrics").at(col.key);
        m.*col.field = v.is_null() ? std::nullopt : std::optional<double>(v.get<double>());
    }
}

std::string cell(const std::optional<double>& v) {
    if (!v) return std::string(kUndefinedCell);
    std::array<char, 32> buf{};
    std::snprintf(buf.data(), buf.size(), "%.4f", *v);
    return buf.data();
}

std::size_t display_width(const std::string& s) {
    std::size_t n = 0;
    for (unsigned char c : s) n += (c & 0xC0) != 0x80;
    return n;
}

}  // namespace

Json report_to_json(const EvalReport& r) {
    Json by_intent = Json::object();
    for (const auto& [intent, m] : r.by_intent) {
        by_intent[intent] = group_json(r.intent_counts.at(intent), m);
    }
    return {{"overall", group_json(r.overall_counts, r.overall)}, {"by_intent", std::move(by_intent)}};
}

EvalReport report_from_json(const Json& j) {
    try {
        EvalReport r;
        group_from_json(j.at("overall"), r.overall_counts, r.overall);
        for (const auto& [intent, g] : j.at("by_intent").items()) {
            group_from_json(g, r.intent_counts[intent], r.by_intent[intent]);
        }
        return r;
    } catch (const Json::exception& e) {
        throw ParseError(std::string("bad report: ") + e.what());
    }
}

std::string report_table(const EvalReport& r) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> header{"Intent", "M"};
    for (const auto& col : kMetricColumns) header.emplace_back(col.column);
    rows.push_back(std::move(header));

    auto add_row = [&](const std::string& name, const EvalCounts& c, const MetricValues& m) {
        std::vector<std::string> row{name, std::to_string(c.M)};
        for (const auto& col : kMetricColumns) row.push_back(cell(m.*col.field));
        rows.push_back(std::move(row));
    };
    for (const auto& [intent, m] : r.by_intent) add_row(intent, r.intent_counts.at(intent), m);
    add_row("overall", r.overall_counts, r.overall);

    std::vector<std::size_t> width(rows.front().size(), 0);
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], display_width(row[i]));
    }
    std::string out;
    for (const auto& row : rows) {
        std::string line;
        for (std::size_t i = 0; i < row.size(); ++i) {
            const std::string pad(width[i] - display_width(row[i]), ' ');
            if (i) line += "  ";
            // Names left-aligned, numbers right-aligned.
            line += i == 0 ? row[i] + pad : pad + row[i];
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out += line + '\n';
    }
    return out;
}

std::string emit_report(const EvalReport& report, std::string_view format) {
    if (format == "json") return report_to_json(report).dump(2) + "\n";
    if (format == "table") return report_table(report);
    throw UnknownFormat("unknown report format '" + std::string(format) + "'");
}

}  // namespace pqa::eval
