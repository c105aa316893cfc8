/// @file rewriter.hpp
/// @brief Standalone-query rewriting: turns a follow-up utterance plus the
/// session history into a self-contained query naming its product.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pqa/core/error.hpp"
#include "pqa/core/types.hpp"
#include "pqa/saq/mentions.hpp"

namespace pqa::saq {

/// The query needs a product referent and none (or more than one) is available.
/// Callers surface a clarification response.
class NoFocus : public Error {
public:
    using Error::Error;
};

enum class RewriteSource { builtin_rules, external_provider };

struct StandaloneQuery {
    std::string text;
    /// Product names injected or preserved; each occurs verbatim in `text`.
    std::vector<std::string> mentioned_products;
    RewriteSource source = RewriteSource::builtin_rules;
    /// Why an external rewrite was discarded, when it was.
    std::string fallback_reason;

    /// Throws Error when `text` is empty or a mention is not a substring of it.
    void validate() const;
};

enum class FocusDerivation { page, history, query };

struct FocusState {
    std::optional<std::string> focus_product_name;  // canonical name
    /// Text to inject for the focus: the surface seen in history, or the
    /// product's display name when the focus comes from the page.
    std::string surface;
    FocusDerivation derivation = FocusDerivation::page;
    /// The most recent product-bearing text named several distinct products.
    bool ambiguous = false;
};

/// Most recent product named in history (newest turn first; within a turn the
/// standalone query, then the user query, then the system response), else the
/// page product, else absent.
FocusState derive_focus(const Session& session, const NameCatalog& catalog);

/// Deterministic rewriter. See rewriter.cpp for the template rules.
StandaloneQuery rewrite_rule_based(const std::string& query, const Session& session,
                                   const NameCatalog& catalog);

std::string_view to_string(RewriteSource source);
std::string_view to_string(FocusDerivation derivation);

}  // namespace pqa::saq
