#include "pqa/saq/mentions.hpp"

#include <algorithm>

#include "pqa/core/text.hpp"

namespace pqa::saq {

NameCatalog::NameCatalog(const std::vector<ProductRecord>& records) {
    for (const auto& r : records) {
        Entry e;
        e.product_id = r.product_id;
        e.canonical_name = r.canonical_name;
        e.display_name = r.display_name();
        e.surfaces.push_back(r.canonical_name);
        for (const auto& a : r.aliases) e.surfaces.push_back(a);
        add(std::move(e));
    }
}

NameCatalog NameCatalog::from_names(const std::vector<std::string>& canonical_names) {
    NameCatalog catalog;
    for (const auto& name : canonical_names) {
        Entry e;
        e.canonical_name = name;
        e.display_name = name;
        e.surfaces.push_back(name);
        catalog.add(std::move(e));
    }
    return catalog;
}

void NameCatalog::add(Entry entry) {
    const std::size_t index = entries_.size();
    entry.surface_tokens.clear();
    for (std::size_t s = 0; s < entry.surfaces.size(); ++s) {
        auto tokens = tokenize(entry.surfaces[s]);
        if (!tokens.empty()) by_first_token_[tokens.front()].emplace_back(index, s);
        entry.surface_tokens.push_back(std::move(tokens));
    }
    entries_.push_back(std::move(entry));
}

const NameCatalog::Entry* NameCatalog::find_by_id(std::string_view product_id) const {
    for (const auto& e : entries_) {
        if (!e.product_id.empty() && e.product_id == product_id) return &e;
    }
    return nullptr;
}

const NameCatalog::Entry* NameCatalog::find_by_canonical(std::string_view canonical_name) const {
    for (const auto& e : entries_) {
        if (e.canonical_name == canonical_name) return &e;
    }
    return nullptr;
}

class MentionScanner {
public:
    static std::vector<Mention> scan(std::string_view text, const NameCatalog& catalog) {
        std::vector<Mention> out;
        const auto spans = tokenize_with_offsets(text);
        std::size_t i = 0;
        while (i < spans.size()) {
            auto it = catalog.by_first_token_.find(spans[i].norm);
            std::size_t best_len = 0;
            std::size_t best_entry = 0;
            std::size_t best_surface = 0;
            if (it != catalog.by_first_token_.end()) {
                for (const auto& [entry, surface] : it->second) {
                    const auto& toks = catalog.entries_[entry].surface_tokens[surface];
                    if (toks.size() <= best_len || i + toks.size() > spans.size()) continue;
                    bool match = true;
                    for (std::size_t k = 0; k < toks.size() && match; ++k) {
                        match = spans[i + k].norm == toks[k];
                    }
                    if (match) {
                        best_len = toks.size();
                        best_entry = entry;
                        best_surface = surface;
                    }
                }
            }
            if (best_len == 0) {
                ++i;
                continue;
            }
            const std::size_t b = spans[i].begin;
            std::size_t e = spans[i + best_len - 1].end;
            // Keep trailing punctuation that belongs to the name, e.g. a closing parenthesis.
            const std::string& name = catalog.entries_[best_entry].surfaces[best_surface];
            const auto name_spans = tokenize_with_offsets(name);
            const std::string_view tail = std::string_view(name).substr(name_spans.back().end);
            if (!tail.empty() && text.substr(e, tail.size()) == tail) e += tail.size();
            out.push_back({best_entry, std::string(text.substr(b, e - b)), i, i + best_len, b, e});
            i += best_len;
        }
        return out;
    }
};

std::vector<Mention> find_mentions(std::string_view text, const NameCatalog& catalog) {
    return MentionScanner::scan(text, catalog);
}

std::vector<std::size_t> listed_entries(std::string_view text, const NameCatalog& catalog) {
    std::vector<std::size_t> out;
    for (const auto& m : find_mentions(text, catalog)) {
        if (std::find(out.begin(), out.end(), m.entry) == out.end()) out.push_back(m.entry);
    }
    return out;
}

}  // namespace pqa::saq
