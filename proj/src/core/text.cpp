#include "pqa/core/text.hpp"

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <stdexcept>

namespace pqa {
namespace {

bool is_separator(UChar32 c) {
    return u_ispunct(c) || u_isUWhiteSpace(c) || u_iscntrl(c);
}

const icu::Normalizer2& nfc() {
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* n = icu::Normalizer2::getNFCInstance(status);
    if (U_FAILURE(status) || n == nullptr) {
        throw std::runtime_error("ICU NFC normalizer unavailable");
    }
    return *n;
}

icu::UnicodeString to_nfc(const icu::UnicodeString& s) {
    UErrorCode status = U_ZERO_ERROR;
    icu::UnicodeString out = nfc().normalize(s, status);
    if (U_FAILURE(status)) {
        throw std::runtime_error("ICU normalization failed");
    }
    return out;
}

}  // namespace

std::string normalize_text(std::string_view raw) {
    if (raw.empty()) return {};

    icu::UnicodeString u = icu::UnicodeString::fromUTF8(
        icu::StringPiece(raw.data(), static_cast<int32_t>(raw.size())));
    u = to_nfc(u);
    u.toLower(icu::Locale::getRoot());
    u = to_nfc(u);

    icu::UnicodeString collapsed;
    bool pending_space = false;
    for (int32_t i = 0; i < u.length();) {
        UChar32 c = u.char32At(i);
        i += U16_LENGTH(c);
        if (is_separator(c)) {
            pending_space = !collapsed.isEmpty();
            continue;
        }
        if (pending_space) {
            collapsed.append(static_cast<UChar>(u' '));
            pending_space = false;
        }
        collapsed.append(c);
    }

    std::string out;
    collapsed.toUTF8String(out);
    return out;
}

std::vector<std::string> tokenize(std::string_view raw) {
    std::vector<std::string> tokens;
    const std::string norm = normalize_text(raw);
    std::size_t start = 0;
    while (start < norm.size()) {
        std::size_t stop = norm.find(' ', start);
        if (stop == std::string::npos) stop = norm.size();
        tokens.emplace_back(norm.substr(start, stop - start));
        start = stop + 1;
    }
    return tokens;
}

std::vector<TokenSpan> tokenize_with_offsets(std::string_view raw) {
    std::vector<TokenSpan> spans;
    const auto* bytes = reinterpret_cast<const uint8_t*>(raw.data());
    const auto length = static_cast<int32_t>(raw.size());

    int32_t i = 0;
    int32_t token_begin = -1;
    auto flush = [&](int32_t end) {
        if (token_begin < 0) return;
        std::string_view piece = raw.substr(token_begin, end - token_begin);
        // One raw run can still normalize to several tokens in rare cases
        // (compatibility characters); keep offsets of the whole run for each.
        for (auto& t : tokenize(piece)) {
            spans.push_back({std::move(t), static_cast<std::size_t>(token_begin),
                             static_cast<std::size_t>(end)});
        }
        token_begin = -1;
    };

    while (i < length) {
        const int32_t at = i;
        UChar32 c;
        U8_NEXT(bytes, i, length, c);
        if (c >= 0 && is_separator(c)) {
            flush(at);
        } else if (token_begin < 0) {
            token_begin = at;
        }
    }
    flush(length);
    return spans;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out.append(sep);
        out.append(parts[i]);
    }
    return out;
}

}  // namespace pqa
