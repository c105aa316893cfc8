/// @file index.hpp
/// @brief Immutable product catalog index: name lookup, id lookup, token postings.

#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pqa/core/error.hpp"
#include "pqa/core/types.hpp"
#include "pqa/saq/mentions.hpp"

namespace pqa::catalog {

class DuplicateId : public Error {
public:
    using Error::Error;
};

/// Two records normalize to the same name. Both ids are reported.
class DuplicateName : public Error {
public:
    DuplicateName(std::string name, std::string first_id, std::string second_id)
        : Error("name '" + name + "' is shared by " + first_id + " and " + second_id),
          name_(std::move(name)), first_id_(std::move(first_id)), second_id_(std::move(second_id)) {}

    const std::string& name() const noexcept { return name_; }
    const std::string& first_id() const noexcept { return first_id_; }
    const std::string& second_id() const noexcept { return second_id_; }

private:
    std::string name_, first_id_, second_id_;
};

class CatalogIndex {
public:
    CatalogIndex() = default;

    std::size_t size() const { return order_.size(); }
    bool empty() const { return order_.empty(); }

    const ProductRecord* find(std::string_view product_id) const;
    /// Exact lookup of a canonical name or alias after normalization.
    std::optional<std::string> lookup_name(std::string_view name) const;
    /// Product ids whose names contain `normalized_token`.
    const std::set<std::string>& postings(const std::string& normalized_token) const;
    bool in_vocabulary(const std::string& normalized_token) const;

    /// Records in ingest order.
    const std::vector<std::string>& ids() const { return order_; }
    const saq::NameCatalog& names() const { return names_; }

private:
    friend CatalogIndex build_index(const std::vector<ProductRecord>& records);

    std::vector<std::string> order_;
    std::unordered_map<std::string, ProductRecord> by_id_;
    std::unordered_map<std::string, std::string> by_name_;  // normalized name -> id
    std::unordered_map<std::string, std::set<std::string>> postings_;
    saq::NameCatalog names_;
};

/// Throws InvalidRecord, DuplicateId, or DuplicateName.
CatalogIndex build_index(const std::vector<ProductRecord>& records);

}  // namespace pqa::catalog
