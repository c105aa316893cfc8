#include "pqa/saq/rewriter.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <set>

#include "pqa/core/text.hpp"

// Rewrite rules, applied in order:
//  1. "how/what about <product>" after a prior "What is the <attr> of <P>?"
//     standalone query: carry <attr> over to the new product.
//  2. The query names a catalog product: returned unchanged.
//  3. An anaphor from the lexicon: ordinals resolve against the products listed
//     in the previous system response, the rest against the focus product.
//  4. A partial name ("LG fridge") whose tokens pick out one of the products
//     listed in the previous system response; earliest-listed wins.
//  5. Otherwise the query is elliptical and the focus product is appended.
//
// Bare noun-phrase queries ("Display size?") are rendered through the
// template "What is the <attribute> of <product>?"; questions and imperatives
// keep their wording with the referent substituted or appended.

namespace pqa::saq {
namespace {

using Tokens = std::vector<TokenSpan>;

struct Anaphor {
    std::vector<std::string_view> tokens;
    int ordinal;  // -1 for focus-resolved anaphors
};

const std::vector<Anaphor>& anaphor_lexicon() {
    static const std::vector<Anaphor> lexicon = {
        {{"the", "first", "one"}, 0},   {{"the", "second", "one"}, 1},
        {{"the", "third", "one"}, 2},   {{"the", "same", "product"}, -1},
        {{"same", "product"}, -1},      {{"this", "one"}, -1},
        {{"this", "phone"}, -1},        {{"this", "fridge"}, -1},
        {{"this", "tv"}, -1},           {{"it"}, -1},
        {{"this"}, -1},                 {{"that"}, -1},
    };
    return lexicon;
}

const std::set<std::string_view> kQuestionWords = {
    "what", "which", "how",  "when",  "where", "who",    "whom",  "whose", "why",
    "is",   "are",   "was",  "were",  "does",  "do",     "did",   "can",   "could",
    "will", "would", "should", "has", "have",  "had",    "may",   "might", "shall",
};

const std::set<std::string_view> kImperativeVerbs = {
    "show", "find", "list",  "compare", "give",  "get",  "tell", "search", "recommend",
    "suggest", "buy", "add", "check",   "help",  "browse", "look", "let",  "send",
};

const std::set<std::string_view> kPrepositions = {"of", "for", "about", "on"};

const std::set<std::string_view> kCategoryNouns = {
    "fridge", "refrigerator", "phone", "mobile", "tv", "television", "laptop",
    "one",    "model",        "product", "shirt", "shoe", "shoes",
};

const std::set<std::string_view> kStopwords = {
    "the", "a",  "an", "of",   "for", "and",  "or",  "to",   "in",    "on",  "with", "is",
    "are", "what", "which", "how", "me", "it", "this", "that", "one", "its", "do", "does",
    "show", "about", "my", "your", "i",
};

enum class QueryShape { noun_phrase, question, imperative };

QueryShape shape_of(const Tokens& tokens) {
    if (tokens.empty()) return QueryShape::noun_phrase;
    const auto& first = tokens.front().norm;
    if (kQuestionWords.contains(first)) return QueryShape::question;
    if (kImperativeVerbs.contains(first)) return QueryShape::imperative;
    return QueryShape::noun_phrase;
}

std::string collapse_spaces(std::string_view s) {
    std::string out;
    bool space = false;
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            space = !out.empty();
            continue;
        }
        if (space) out.push_back(' ');
        space = false;
        out.push_back(c);
    }
    return out;
}

bool is_terminal_punct(char c) { return c == '?' || c == '.' || c == '!' || c == ','; }

/// Splits "Display size? " into ("Display size", "?").
std::pair<std::string, std::string> split_terminal(std::string_view raw) {
    std::string body = collapse_spaces(raw);
    std::size_t cut = body.size();
    while (cut > 0 && (is_terminal_punct(body[cut - 1]) || body[cut - 1] == ' ')) --cut;
    std::string tail = body.substr(cut);
    tail.erase(std::remove(tail.begin(), tail.end(), ' '), tail.end());
    body.resize(cut);
    return {body, tail};
}

/// "Display size" -> "display size"; acronyms such as "USB" are left alone.
std::string lower_leading_word(std::string s) {
    std::size_t end = s.find(' ');
    if (end == std::string::npos) end = s.size();
    if (end == 0 || !std::isupper(static_cast<unsigned char>(s[0]))) return s;
    for (std::size_t i = 1; i < end; ++i) {
        if (std::isupper(static_cast<unsigned char>(s[i]))) return s;
    }
    s[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(s[0])));
    return s;
}

std::string strip_leading_article(std::string s) {
    for (std::string_view article : {"the ", "The "}) {
        if (s.starts_with(article)) return s.substr(article.size());
    }
    return s;
}

std::string attribute_template(const std::string& attribute, const std::string& referent) {
    if (attribute.empty()) return "Tell me about " + referent + ".";
    return "What is the " + attribute + " of " + referent + "?";
}

/// Replaces tokens [first, last) of `raw` by the referent, honoring query shape.
std::string substitute(std::string_view raw, const Tokens& tokens, std::size_t first,
                       std::size_t last, const std::string& referent) {
    if (shape_of(tokens) == QueryShape::noun_phrase) {
        std::size_t cut_first = first;
        if (cut_first > 0 && kPrepositions.contains(tokens[cut_first - 1].norm)) --cut_first;
        std::string rest = std::string(raw.substr(0, tokens[cut_first].begin)) + " " +
                           std::string(raw.substr(tokens[last - 1].end));
        auto [attribute, tail] = split_terminal(rest);
        return attribute_template(lower_leading_word(strip_leading_article(attribute)),
                                  referent);
    }
    return collapse_spaces(std::string(raw.substr(0, tokens[first].begin)) + referent +
                           std::string(raw.substr(tokens[last - 1].end)));
}

std::string append_referent(std::string_view raw, const Tokens& tokens,
                            const std::string& referent) {
    auto [body, tail] = split_terminal(raw);
    switch (shape_of(tokens)) {
        case QueryShape::noun_phrase:
            return attribute_template(lower_leading_word(strip_leading_article(body)), referent);
        case QueryShape::question:
            return body + " of " + referent + (tail.empty() ? "?" : tail);
        case QueryShape::imperative:
            return body + " for " + referent + (tail.empty() ? "." : tail);
    }
    return body;
}

struct AnaphorHit {
    std::size_t first;
    std::size_t last;
    int ordinal;
};

std::optional<AnaphorHit> find_anaphor(const Tokens& tokens) {
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        for (const auto& a : anaphor_lexicon()) {  // longest phrases are listed first
            if (i + a.tokens.size() > tokens.size()) continue;
            bool match = true;
            for (std::size_t k = 0; k < a.tokens.size() && match; ++k) {
                match = tokens[i + k].norm == a.tokens[k];
            }
            if (match) return AnaphorHit{i, i + a.tokens.size(), a.ordinal};
        }
    }
    return std::nullopt;
}

const ConversationTurn* last_turn(const Session& s) {
    return s.turns.empty() ? nullptr : &s.turns.back();
}

std::vector<std::size_t> previously_listed(const Session& session, const NameCatalog& catalog) {
    const auto* turn = last_turn(session);
    if (turn == nullptr) return {};
    return listed_entries(turn->system_response, catalog);
}

/// Verbatim surface of `entry` inside `text`, else its display name.
std::string surface_in(std::string_view text, std::size_t entry, const NameCatalog& catalog) {
    for (const auto& m : find_mentions(text, catalog)) {
        if (m.entry == entry) return m.surface;
    }
    return catalog.entries()[entry].display_name;
}

struct PartialHit {
    std::size_t first;
    std::size_t last;
    std::size_t entry;
};

std::optional<PartialHit> find_partial_mention(const Tokens& tokens,
                                               const std::vector<std::size_t>& listed,
                                               const NameCatalog& catalog) {
    if (listed.empty()) return std::nullopt;

    std::vector<std::set<std::string>> vocab;
    std::set<std::string> all_tokens;
    for (std::size_t e : listed) {
        std::set<std::string> v;
        for (const auto& toks : catalog.entries()[e].surface_tokens) v.insert(toks.begin(), toks.end());
        all_tokens.insert(v.begin(), v.end());
        vocab.push_back(std::move(v));
    }

    std::vector<std::size_t> overlap;  // token positions
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const auto& t = tokens[i].norm;
        if (t.size() < 2 || kStopwords.contains(t)) continue;
        if (all_tokens.contains(t)) overlap.push_back(i);
    }
    if (overlap.empty()) return std::nullopt;

    // Keep candidates carrying every overlapping token; otherwise the best partial.
    std::size_t best = listed.size();
    std::size_t best_hits = 0;
    for (std::size_t c = 0; c < listed.size(); ++c) {
        std::size_t hits = 0;
        for (std::size_t i : overlap) hits += vocab[c].contains(tokens[i].norm);
        if (hits > best_hits) {
            best_hits = hits;
            best = c;
        }
        if (hits == overlap.size()) break;  // earliest-listed full match
    }

    std::size_t first = overlap.front();
    std::size_t last = overlap.back() + 1;
    if (last < tokens.size() && kCategoryNouns.contains(tokens[last].norm)) ++last;
    if (first > 0 && tokens[first - 1].norm == "the") --first;
    return PartialHit{first, last, listed[best]};
}

/// "What is the <attr> of <P>?" -> <attr>, from the most recent turn that has one.
std::optional<std::string> carried_attribute(const Session& session, const NameCatalog& catalog) {
    static constexpr std::string_view kPrefix = "What is the ";
    static constexpr std::string_view kJoin = " of ";
    for (auto it = session.turns.rbegin(); it != session.turns.rend(); ++it) {
        const std::string& q = it->standalone_query;
        auto mentions = find_mentions(q, catalog);
        if (mentions.empty() || !q.starts_with(kPrefix)) continue;
        const auto& m = mentions.back();
        if (q.substr(m.byte_end) != "?") continue;
        std::string_view head = std::string_view(q).substr(0, m.byte_begin);
        if (!head.ends_with(kJoin) || head.size() <= kPrefix.size() + kJoin.size()) continue;
        return std::string(head.substr(kPrefix.size(), head.size() - kPrefix.size() - kJoin.size()));
    }
    return std::nullopt;
}

StandaloneQuery make_result(std::string text, std::vector<std::string> mentions) {
    StandaloneQuery out;
    out.text = std::move(text);
    out.mentioned_products = std::move(mentions);
    out.source = RewriteSource::builtin_rules;
    return out;
}

std::string require_focus(const Session& session, const NameCatalog& catalog) {
    FocusState focus = derive_focus(session, catalog);
    if (!focus.focus_product_name) throw NoFocus("no product in focus");
    if (focus.ambiguous) throw NoFocus("several products could be meant");
    return focus.surface;
}

}  // namespace

void StandaloneQuery::validate() const {
    if (text.empty()) throw Error("standalone query text is empty");
    for (const auto& m : mentioned_products) {
        if (text.find(m) == std::string::npos) {
            throw Error("mentioned product '" + m + "' does not occur in '" + text + "'");
        }
    }
}

FocusState derive_focus(const Session& session, const NameCatalog& catalog) {
    FocusState focus;
    for (auto it = session.turns.rbegin(); it != session.turns.rend(); ++it) {
        for (const std::string* text : {&it->standalone_query, &it->user_query, &it->system_response}) {
            auto mentions = find_mentions(*text, catalog);
            if (mentions.empty()) continue;
            const auto& entry = catalog.entries()[mentions.front().entry];
            focus.focus_product_name = entry.canonical_name;
            focus.surface = mentions.front().surface;
            focus.derivation = FocusDerivation::history;
            focus.ambiguous = std::any_of(mentions.begin(), mentions.end(), [&](const Mention& m) {
                return m.entry != mentions.front().entry;
            });
            return focus;
        }
    }
    if (session.current_page_product_id) {
        if (const auto* entry = catalog.find_by_id(*session.current_page_product_id)) {
            focus.focus_product_name = entry->canonical_name;
            focus.surface = entry->display_name;
            focus.derivation = FocusDerivation::page;
        }
    }
    return focus;
}

StandaloneQuery rewrite_rule_based(const std::string& query, const Session& session,
                                   const NameCatalog& catalog) {
    if (normalize_text(query).empty()) throw Error("query must be nonempty");

    const Tokens tokens = tokenize_with_offsets(query);
    const auto mentions = find_mentions(query, catalog);

    // 1. Product switch with attribute carry-over.
    const bool switch_phrase = tokens.size() >= 3 &&
                               (tokens[0].norm == "how" || tokens[0].norm == "what") &&
                               tokens[1].norm == "about";
    if (switch_phrase && !mentions.empty() && mentions.front().token_begin == 2 &&
        !session.turns.empty()) {
        auto attribute = carried_attribute(session, catalog);
        if (!attribute) throw NoFocus("no earlier attribute question to carry over");
        const std::string& product = mentions.front().surface;
        return make_result(attribute_template(*attribute, product), {product});
    }

    // 2. Already self-contained.
    if (!mentions.empty()) {
        std::vector<std::string> names;
        for (const auto& m : mentions) names.push_back(m.surface);
        return make_result(query, std::move(names));
    }

    // 3. Anaphora.
    if (auto hit = find_anaphor(tokens)) {
        std::string referent;
        if (hit->ordinal >= 0) {
            auto listed = previously_listed(session, catalog);
            if (static_cast<std::size_t>(hit->ordinal) >= listed.size()) {
                throw NoFocus("no listed product at that position");
            }
            referent = surface_in(last_turn(session)->system_response,
                                  listed[static_cast<std::size_t>(hit->ordinal)], catalog);
        } else {
            referent = require_focus(session, catalog);
        }
        return make_result(substitute(query, tokens, hit->first, hit->last, referent), {referent});
    }

    // 4. Partial name against the previous listing.
    const auto listed = previously_listed(session, catalog);
    if (auto partial = find_partial_mention(tokens, listed, catalog)) {
        std::string referent =
            surface_in(last_turn(session)->system_response, partial->entry, catalog);
        return make_result(substitute(query, tokens, partial->first, partial->last, referent),
                           {referent});
    }

    // 5. Elliptical.
    std::string referent = require_focus(session, catalog);
    return make_result(append_referent(query, tokens, referent), {referent});
}

std::string_view to_string(RewriteSource source) {
    return source == RewriteSource::builtin_rules ? "builtin_rules" : "external_provider";
}

std::string_view to_string(FocusDerivation derivation) {
    switch (derivation) {
        case FocusDerivation::page: return "page";
        case FocusDerivation::history: return "history";
        case FocusDerivation::query: return "query";
    }
    return "page";
}

}  // namespace pqa::saq
