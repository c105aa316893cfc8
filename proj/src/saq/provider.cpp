#include "pqa/saq/provider.hpp"

#include "pqa/core/http_endpoint.hpp"
#include "pqa/core/text.hpp"

namespace pqa::saq {

HttpRewriteProvider::HttpRewriteProvider(std::string url, std::chrono::milliseconds timeout)
    : url_(std::move(url)), timeout_(timeout) {}

std::string HttpRewriteProvider::rewrite(const std::string& query, const Session& session,
                                         const NameCatalog& catalog) {
    Json history = Json::array();
    for (const auto& turn : session.turns) {
        history.push_back({{"user", turn.user_query}, {"system", turn.system_response}});
    }
    Json page = nullptr;
    if (session.current_page_product_id) {
        const auto* entry = catalog.find_by_id(*session.current_page_product_id);
        page = entry ? entry->canonical_name : *session.current_page_product_id;
    }
    Json reply = http_post_json(url_, {{"query", query}, {"history", history}, {"page_product", page}},
                                timeout_);
    auto it = reply.find("standalone_query");
    if (it == reply.end() || !it->is_string()) {
        throw HttpError(url_ + ": reply lacks a string 'standalone_query'");
    }
    return it->get<std::string>();
}

StandaloneQuery rewrite(const std::string& query, const Session& session,
                        const NameCatalog& catalog, RewriteProvider* provider) {
    if (provider == nullptr) return rewrite_rule_based(query, session, catalog);

    std::string reason;
    try {
        StandaloneQuery out;
        out.text = provider->rewrite(query, session, catalog);
        if (normalize_text(out.text).empty()) throw Error("provider returned an empty query");
        for (const auto& m : find_mentions(out.text, catalog)) out.mentioned_products.push_back(m.surface);
        out.source = RewriteSource::external_provider;
        out.validate();
        return out;
    } catch (const std::exception& e) {
        reason = e.what();
    }

    try {
        StandaloneQuery out = rewrite_rule_based(query, session, catalog);
        out.fallback_reason = reason;
        return out;
    } catch (const std::exception& e) {
        throw ProviderUnavailable("rewrite provider failed (" + reason +
                                  ") and rule-based fallback failed (" + e.what() + ")");
    }
}

}  // namespace pqa::saq
