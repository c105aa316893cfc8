/// @file text.hpp
/// @brief Deterministic text normalization and tokenization shared by every matcher.

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace pqa {

/// Lowercase, NFC, punctuation mapped to spaces, whitespace collapsed and trimmed.
/// Idempotent. Invalid UTF-8 sequences are replaced by U+FFFD.
std::string normalize_text(std::string_view raw);

/// Tokens of normalize_text(raw), split on single spaces.
std::vector<std::string> tokenize(std::string_view raw);

/// A token located in the original (un-normalized) text.
struct TokenSpan {
    std::string norm;   // normalized token text
    std::size_t begin;  // byte offset into the raw text
    std::size_t end;    // one past the last byte
};

/// Same token boundaries as tokenize(), with byte offsets into `raw` so callers
/// can recover verbatim substrings.
std::vector<TokenSpan> tokenize_with_offsets(std::string_view raw);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

}  // namespace pqa
