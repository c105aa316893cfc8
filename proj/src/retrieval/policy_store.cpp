#include "pqa/retrieval/policy_store.hpp"

#include <fstream>

#include "pqa/core/json_io.hpp"
#include "pqa/retrieval/orchestrator.hpp"

namespace pqa::retrieval {

PolicyStore::PolicyStore(std::vector<PolicyEntry> entries) : entries_(std::move(entries)) {}

std::vector<const PolicyEntry*> PolicyStore::lookup(const std::string& product_id,
                                                    Intent intent) const {
    std::vector<const PolicyEntry*> specific;
    std::vector<const PolicyEntry*> wildcard;
    for (const auto& e : entries_) {
        if (e.intent != intent) continue;
        if (e.product_id == product_id) specific.push_back(&e);
        else if (e.product_id == kAnyProduct) wildcard.push_back(&e);
    }
    specific.insert(specific.end(), wildcard.begin(), wildcard.end());
    return specific;
}

PolicyStore read_policy_store(std::istream& in) {
    std::vector<PolicyEntry> entries;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            const Json j = Json::parse(line);
            PolicyEntry e;
            e.product_id = j.at("product_id").get<std::string>();
            const auto label = j.at("intent").get<std::string>();
            auto intent = parse_intent(label);
            if (!intent || !IntentTaxonomy::is_decision(*intent)) {
                throw ParseError("'" + label + "' is not a decision intent");
            }
            if (!sources_for(*intent).policy) throw ParseError("'" + label + "' does not read policy entries");
            e.intent = *intent;
            e.text = j.at("text").get<std::string>();
            if (e.product_id.empty() || e.text.empty()) throw ParseError("empty product_id or text");
            entries.push_back(std::move(e));
        } catch (const std::exception& e) {
            throw ParseError("policy line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return PolicyStore(std::move(entries));
}

PolicyStore load_policy_store(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw PolicyStoreUnavailable("cannot open policy store " + path);
    return read_policy_store(in);
}

}  // namespace pqa::retrieval
