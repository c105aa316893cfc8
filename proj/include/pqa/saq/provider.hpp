#pragma once

#include <chrono>
#include <memory>
#include <string>

#include "pqa/saq/rewriter.hpp"

namespace pqa::saq {

/// An external rewriter. Implementations throw on transport or protocol failure.
class RewriteProvider {
public:
    virtual ~RewriteProvider() = default;
    virtual std::string rewrite(const std::string& query, const Session& session,
                                const NameCatalog& catalog) = 0;
};

/// POST {query, history:[{user, system}], page_product} -> {standalone_query}.
class HttpRewriteProvider final : public RewriteProvider {
public:
    explicit HttpRewriteProvider(std::string url,
                                 std::chrono::milliseconds timeout = std::chrono::seconds(2));
    std::string rewrite(const std::string& query, const Session& session,
                        const NameCatalog& catalog) override;

private:
    std::string url_;
    std::chrono::milliseconds timeout_;
};

/// Uses `provider` when non-null and falls back to rewrite_rule_based when it
/// fails or returns an invalid query. Throws NoFocus when only the rule-based
/// path ran and it needs a referent; ProviderUnavailable when the provider and
/// the fallback both failed.
StandaloneQuery rewrite(const std::string& query, const Session& session,
                        const NameCatalog& catalog, RewriteProvider* provider);

}  // namespace pqa::saq
