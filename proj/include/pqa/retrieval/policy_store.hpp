/// @file policy_store.hpp
/// @brief Store-wide and per-product policy texts (delivery, returns, offers...).

#pragma once

#include <istream>
#include <string>
#include <vector>

#include "pqa/core/error.hpp"
#include "pqa/core/types.hpp"

namespace pqa::retrieval {

class PolicyStoreUnavailable : public Error {
public:
    using Error::Error;
};

/// Product id that applies an entry to every product.
inline constexpr std::string_view kAnyProduct = "*";

struct PolicyEntry {
    std::string product_id;
    Intent intent = Intent::warranty;
    std::string text;
};

class PolicyStore {
public:
    PolicyStore() = default;
    explicit PolicyStore(std::vector<PolicyEntry> entries);

    /// Entries for `product_id` first, then wildcard entries, each in file order.
    std::vector<const PolicyEntry*> lookup(const std::string& product_id, Intent intent) const;

    std::size_t size() const { return entries_.size(); }

private:
    std::vector<PolicyEntry> entries_;
};

/// JSONL lines {"product_id", "intent", "text"}; the intent must be one served
/// by policy entries. Throws ParseError naming the line.
PolicyStore read_policy_store(std::istream& in);

/// Throws PolicyStoreUnavailable when the file cannot be opened.
PolicyStore load_policy_store(const std::string& path);

}  // namespace pqa::retrieval
