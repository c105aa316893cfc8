/// @file mentions.hpp
/// @brief Locating catalog product names inside free text.

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pqa/core/types.hpp"

namespace pqa::saq {

/// Product names (canonical + aliases) in tokenized form.
class NameCatalog {
public:
    struct Entry {
        std::string product_id;  // may be empty when built from bare names
        std::string canonical_name;
        std::string display_name;
        std::vector<std::string> surfaces;               // canonical first, then aliases
        std::vector<std::vector<std::string>> surface_tokens;
    };

    NameCatalog() = default;
    explicit NameCatalog(const std::vector<ProductRecord>& records);
    /// Bare canonical names, no aliases and no ids.
    static NameCatalog from_names(const std::vector<std::string>& canonical_names);

    const std::vector<Entry>& entries() const { return entries_; }
    const Entry* find_by_id(std::string_view product_id) const;
    const Entry* find_by_canonical(std::string_view canonical_name) const;

private:
    void add(Entry entry);

    std::vector<Entry> entries_;
    friend class MentionScanner;
    // first normalized token -> (entry index, surface index)
    std::unordered_map<std::string, std::vector<std::pair<std::size_t, std::size_t>>> by_first_token_;
};

struct Mention {
    std::size_t entry;         // index into NameCatalog::entries()
    std::string surface;       // verbatim text from the scanned string
    std::size_t token_begin;   // token range in tokenize_with_offsets(text)
    std::size_t token_end;
    std::size_t byte_begin;
    std::size_t byte_end;
};

/// Leftmost-longest, non-overlapping matches in order of appearance.
std::vector<Mention> find_mentions(std::string_view text, const NameCatalog& catalog);

/// Distinct entries mentioned in `text`, in order of first appearance.
std::vector<std::size_t> listed_entries(std::string_view text, const NameCatalog& catalog);

}  // namespace pqa::saq
