#include "pqa/catalog/resolver.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "pqa/catalog/fuzzy.hpp"
#include "pqa/core/text.hpp"

namespace pqa::catalog {

std::string_view to_string(MatchMethod method) {
    switch (method) {
        case MatchMethod::exact_history: return "exact_history";
        case MatchMethod::fuzzy_history: return "fuzzy_history";
        case MatchMethod::fuzzy_catalog: return "fuzzy_catalog";
        case MatchMethod::search_fallback: return "search_fallback";
    }
    return "exact_history";
}

namespace {

std::vector<std::string> names_of(const ProductRecord& r) {
    std::vector<std::string> names{r.canonical_name};
    names.insert(names.end(), r.aliases.begin(), r.aliases.end());
    return names;
}

double best_name_score(std::string_view mention, const ProductRecord& r) {
    double best = 0.0;
    for (const auto& name : names_of(r)) best = std::max(best, fuzzy_score(mention, name));
    return best;
}

struct Scored {
    std::string id;
    double score;
    std::size_t recency;  // smaller is more recent
};

// Higher score, then more recent, then smaller id.
bool better(const Scored& a, const Scored& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.recency != b.recency) return a.recency < b.recency;
    return a.id < b.id;
}

std::optional<Scored> best_of(std::vector<Scored> scored, double threshold) {
    std::optional<Scored> best;
    for (auto& s : scored) {
        if (s.score < threshold) continue;
        if (!best || better(s, *best)) best = std::move(s);
    }
    return best;
}

std::vector<std::string> catalog_candidates(std::string_view mention, const CatalogIndex& index) {
    std::map<std::string, std::size_t> hits;
    for (const auto& token : tokenize(mention)) {
        for (const auto& id : index.postings(token)) ++hits[id];
    }
    std::vector<std::pair<std::string, std::size_t>> ranked(hits.begin(), hits.end());
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    if (ranked.size() > kMaxFuzzyCandidates) ranked.resize(kMaxFuzzyCandidates);
    std::vector<std::string> out;
    for (auto& [id, n] : ranked) out.push_back(id);
    return out;
}

ProductMatch make_match(const CatalogIndex& index, const std::string& id, MatchMethod method,
                        double score, const std::string& mention) {
    return {id, index.find(id)->canonical_name, method, score, mention};
}

}  // namespace

std::string salient_name(std::string_view text, const CatalogIndex& index) {
    const auto tokens = tokenize(text);
    std::size_t best_begin = 0;
    std::size_t best_len = 0;
    std::size_t run_begin = 0;
    for (std::size_t i = 0; i <= tokens.size(); ++i) {
        if (i < tokens.size() && index.in_vocabulary(tokens[i])) continue;
        if (i - run_begin > best_len) {
            best_len = i - run_begin;
            best_begin = run_begin;
        }
        run_begin = i + 1;
    }
    std::vector<std::string> gram(tokens.begin() + static_cast<std::ptrdiff_t>(best_begin),
                                  tokens.begin() + static_cast<std::ptrdiff_t>(best_begin + best_len));
    return join(gram, " ");
}

std::vector<std::string> history_products(const Session& session, const CatalogIndex& index) {
    std::vector<std::string> out;
    auto push = [&](const std::string& id) {
        if (index.find(id) && std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
    };
    const auto& names = index.names();
    for (auto it = session.turns.rbegin(); it != session.turns.rend(); ++it) {
        for (const auto& id : it->resolved_product_ids) push(id);
        for (const std::string* text : {&it->system_response, &it->standalone_query, &it->user_query}) {
            for (const auto& m : saq::find_mentions(*text, names)) {
                push(names.entries()[m.entry].product_id);
            }
        }
    }
    if (session.current_page_product_id) push(*session.current_page_product_id);
    return out;
}

ResolveResult resolve(const saq::StandaloneQuery& query, const Session& session,
                      const CatalogIndex& index, SearchClient* search_client,
                      double fuzzy_threshold) {
    ResolveResult result;

    std::vector<std::string> mentions = query.mentioned_products;
    if (mentions.empty()) {
        if (auto salient = salient_name(query.text, index); !salient.empty()) {
            mentions.push_back(std::move(salient));
        }
    }

    const auto history = history_products(session, index);

    auto add = [&](ProductMatch m) {
        const bool seen = std::any_of(result.matches.begin(), result.matches.end(),
                                      [&](const ProductMatch& x) { return x.product_id == m.product_id; });
        if (!seen) result.matches.push_back(std::move(m));
    };

    for (const auto& mention : mentions) {
        const std::string norm = normalize_text(mention);

        // 1. Exact match against products already in the conversation.
        std::optional<std::string> exact;
        for (const auto& id : history) {
            for (const auto& name : names_of(*index.find(id))) {
                if (normalize_text(name) == norm) exact = id;
            }
            if (exact) break;
        }
        if (exact) {
            add(make_match(index, *exact, MatchMethod::exact_history, 1.0, mention));
            continue;
        }

        // 2a. Fuzzy against history.
        std::vector<Scored> scored;
        for (std::size_t r = 0; r < history.size(); ++r) {
            scored.push_back({history[r], best_name_score(mention, *index.find(history[r])), r});
        }
        if (auto best = best_of(std::move(scored), fuzzy_threshold)) {
            add(make_match(index, best->id, MatchMethod::fuzzy_history, best->score, mention));
            continue;
        }

        // 2b. Fuzzy against catalog candidates from the token index.
        scored.clear();
        for (const auto& id : catalog_candidates(mention, index)) {
            scored.push_back({id, best_name_score(mention, *index.find(id)), history.size()});
        }
        if (auto best = best_of(std::move(scored), fuzzy_threshold)) {
            add(make_match(index, best->id, MatchMethod::fuzzy_catalog, best->score, mention));
            continue;
        }

        // 3. Salient name through the search client.
        if (search_client == nullptr) {
            result.misses.push_back({mention, "no match and search client disabled"});
            continue;
        }
        const std::string salient = salient_name(query.text, index);
        const std::string& search_text = salient.empty() ? mention : salient;
        try {
            auto canonical = search_client->lookup(search_text);
            std::optional<std::string> id;
            if (canonical) id = index.lookup_name(*canonical);
            if (!id) {
                result.misses.push_back({mention, canonical ? "search result '" + *canonical + "' not in catalog"
                                                            : "search returned no product"});
                continue;
            }
            add(make_match(index, *id, MatchMethod::search_fallback,
                           best_name_score(search_text, *index.find(*id)), mention));
        } catch (const SearchClientError& e) {
            result.misses.push_back({mention, std::string("search client error: ") + e.what()});
        }
    }
    return result;
}

}  // namespace pqa::catalog
