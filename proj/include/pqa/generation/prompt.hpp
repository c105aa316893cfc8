/// @file prompt.hpp
/// @brief Five-section prompt layout.
///
///     ## SYSTEM          persona, guidelines, intent exemplars
///     ## CONTEXT         product title lines, then ranked snippets
///     ## USER_PROFILE    key: value lines
///     ## METADATA        one line per routed intent
///     ## QUESTION        the standalone query
///
/// Each header sits on its own line; each body is followed by one blank line.

#pragma once

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pqa/core/error.hpp"
#include "pqa/core/types.hpp"
#include "pqa/retrieval/reducer.hpp"
#include "pqa/saq/rewriter.hpp"

namespace pqa::generation {

class MissingTitle : public Error {
public:
    using Error::Error;
};

inline constexpr std::array<std::string_view, 5> kSectionHeaders = {
    "## SYSTEM", "## CONTEXT", "## USER_PROFILE", "## METADATA", "## QUESTION",
};

struct ProductTitle {
    std::string product_id;
    std::string title;  // canonical name
};

struct PromptParts {
    std::string persona_instructions;
    retrieval::ReducedContext reduced_context;
    std::vector<ProductTitle> product_titles;
    UserContext user_context;
    /// Explanations keyed by intent; only routed intents are rendered.
    std::map<Intent, std::string> intent_metadata;
    std::vector<Intent> routed_intents;
    saq::StandaloneQuery standalone_query;

    /// Title for a product id, or nullptr.
    const std::string* title_of(std::string_view product_id) const;
};

struct ComposedPrompt {
    std::string text;
    /// Body ranges [begin, end) of the five sections, in header order.
    std::array<std::pair<std::size_t, std::size_t>, 5> section_offsets{};

    std::string_view section(std::size_t i) const;
};

/// Throws MissingTitle when there is context but no title, Error when the
/// standalone query is invalid.
ComposedPrompt compose_prompt(const PromptParts& parts);

}  // namespace pqa::generation
