#include "pqa/service/ingest.hpp"

#include <fstream>
#include <map>
#include <set>

#include "pqa/core/text.hpp"

namespace pqa::service {

void to_json(Json& j, const IngestReport& r) {
    Json errors = Json::array();
    for (const auto& e : r.errors) errors.push_back({{"line", e.line}, {"message", e.message}});
    j = {{"records_read", r.records_read},
         {"records_indexed", r.records_indexed},
         {"duplicates", r.duplicates},
         {"errors", std::move(errors)}};
}

ParsedCatalog parse_catalog(std::istream& in) {
    ParsedCatalog out;
    std::set<std::string> ids;
    std::map<std::string, std::string> names;  // normalized name -> id
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        ++out.report.records_read;
        ProductRecord record;
        try {
            record = Json::parse(line).get<ProductRecord>();
            record.validate();
        } catch (const std::exception& e) {
            out.report.errors.push_back({line_no, e.what()});
            continue;
        }
        if (ids.contains(record.product_id)) {
            ++out.report.duplicates;
            continue;
        }
        std::vector<std::string> own;
        std::string clash;
        own.push_back(normalize_text(record.canonical_name));
        for (const auto& alias : record.aliases) own.push_back(normalize_text(alias));
        for (const auto& n : own) {
            if (n.empty()) clash = "a product name normalizes to empty text";
            auto it = names.find(n);
            if (it != names.end()) clash = "name '" + n + "' already used by " + it->second;
        }
        if (!clash.empty()) {
            out.report.errors.push_back({line_no, clash});
            continue;
        }
        for (const auto& n : own) names.emplace(n, record.product_id);
        ids.insert(record.product_id);
        out.records.push_back(std::move(record));
        ++out.report.records_indexed;
    }
    return out;
}

ParsedCatalog parse_catalog_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open catalog " + path);
    return parse_catalog(in);
}

}  // namespace pqa::service
