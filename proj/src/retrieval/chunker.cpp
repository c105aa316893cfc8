#include "pqa/retrieval/chunker.hpp"

#include <array>
#include <cctype>
#include <cstdio>
#include <sstream>

#include "pqa/core/text.hpp"

namespace pqa::retrieval {
namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::size_t token_count(std::string_view s) { return tokenize(s).size(); }

std::string snippet_id(const BundleGroup& g, SourceKind kind, std::size_t ordinal) {
    std::array<char, 16> buf{};
    std::snprintf(buf.data(), buf.size(), "%04zu", ordinal);
    return g.product_id + ":" + std::string(to_string(g.intent)) + ":" +
           std::string(to_string(kind)) + ":" + buf.data();
}

/// Cuts an over-long sentence at word boundaries.
std::vector<std::string> hard_split(const std::string& sentence) {
    std::vector<std::string> out;
    std::istringstream words(sentence);
    std::string word, current;
    std::size_t tokens = 0;
    while (words >> word) {
        const std::size_t n = token_count(word);
        if (tokens + n > kMaxChunkTokens && !current.empty()) {
            out.push_back(current);
            current.clear();
            tokens = 0;
        }
        if (!current.empty()) current += ' ';
        current += word;
        tokens += n;
    }
    if (!current.empty()) out.push_back(current);
    return out;
}

}  // namespace

std::vector<std::string> split_sentences(const std::string& text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (c != '.' && c != '!' && c != '?') continue;
        const bool boundary = i + 1 == text.size() || std::isspace(static_cast<unsigned char>(text[i + 1]));
        if (!boundary) continue;
        if (auto s = trim(std::string_view(text).substr(start, i + 1 - start)); !s.empty()) {
            out.push_back(std::move(s));
        }
        start = i + 1;
    }
    if (auto s = trim(std::string_view(text).substr(start)); !s.empty()) out.push_back(std::move(s));
    return out;
}

std::vector<std::string> pack_sentences(const std::string& text) {
    std::vector<std::string> out;
    std::string current;
    std::size_t tokens = 0;
    auto flush = [&] {
        if (!current.empty()) out.push_back(std::move(current));
        current.clear();
        tokens = 0;
    };
    for (const auto& sentence : split_sentences(text)) {
        const std::size_t n = token_count(sentence);
        if (n > kMaxChunkTokens) {
            flush();
            for (auto& piece : hard_split(sentence)) out.push_back(std::move(piece));
            continue;
        }
        if (tokens + n > kMaxChunkTokens) flush();
        if (!current.empty()) current += ' ';
        current += sentence;
        tokens += n;
    }
    flush();
    return out;
}

std::vector<ContextSnippet> chunk(const SourceBundle& bundle) {
    std::vector<ContextSnippet> out;
    for (const auto& g : bundle.groups) {
        std::array<std::size_t, 4> ordinal{};
        auto emit = [&](SourceKind kind, std::string text) {
            if (normalize_text(text).empty()) return;
            auto& n = ordinal[static_cast<std::size_t>(kind)];
            out.push_back({snippet_id(g, kind, n++), g.product_id, g.intent, kind, std::move(text), 0.0});
        };
        for (const auto& e : g.entries) {
            switch (e.kind) {
                case SourceKind::structured:
                    emit(e.kind, e.name + ": " + e.text);
                    break;
                case SourceKind::semi_structured:
                    emit(e.kind, "Q: " + e.name + " A: " + e.text);
                    break;
                case SourceKind::unstructured:
                case SourceKind::policy:
                    for (auto& piece : pack_sentences(e.text)) emit(e.kind, std::move(piece));
                    break;
            }
        }
    }
    return out;
}

}  // namespace pqa::retrieval
