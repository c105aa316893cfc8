#include "pqa/catalog/index.hpp"

#include "pqa/core/text.hpp"

namespace pqa::catalog {

const ProductRecord* CatalogIndex::find(std::string_view product_id) const {
    auto it = by_id_.find(std::string(product_id));
    return it == by_id_.end() ? nullptr : &it->second;
}

std::optional<std::string> CatalogIndex::lookup_name(std::string_view name) const {
    auto it = by_name_.find(normalize_text(name));
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
}

const std::set<std::string>& CatalogIndex::postings(const std::string& normalized_token) const {
    static const std::set<std::string> kEmpty;
    auto it = postings_.find(normalized_token);
    return it == postings_.end() ? kEmpty : it->second;
}

bool CatalogIndex::in_vocabulary(const std::string& normalized_token) const {
    return postings_.contains(normalized_token);
}

CatalogIndex build_index(const std::vector<ProductRecord>& records) {
    CatalogIndex index;
    for (const auto& record : records) {
        record.validate();
        if (index.by_id_.contains(record.product_id)) {
            throw DuplicateId("duplicate product_id " + record.product_id);
        }
        std::vector<std::string> names{record.canonical_name};
        names.insert(names.end(), record.aliases.begin(), record.aliases.end());
        for (const auto& name : names) {
            const std::string norm = normalize_text(name);
            if (norm.empty()) throw InvalidRecord("name of " + record.product_id + " normalizes to empty");
            auto [it, inserted] = index.by_name_.emplace(norm, record.product_id);
            if (!inserted && it->second != record.product_id) {
                throw DuplicateName(norm, it->second, record.product_id);
            }
            for (auto& token : tokenize(name)) index.postings_[token].insert(record.product_id);
        }
        index.order_.push_back(record.product_id);
        index.by_id_.emplace(record.product_id, record);
    }
    index.names_ = saq::NameCatalog(records);
    return index;
}

}  // namespace pqa::catalog
