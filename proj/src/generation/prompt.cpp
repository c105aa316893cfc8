#include "pqa/generation/prompt.hpp"

#include <algorithm>

namespace pqa::generation {
namespace {

/// Newlines inside one rendered line would break the section layout.
std::string one_line(std::string_view s) {
    std::string out(s);
    std::replace(out.begin(), out.end(), '\n', ' ');
    std::replace(out.begin(), out.end(), '\r', ' ');
    return out;
}

std::string join_lines(const std::vector<std::string>& lines) {
    std::string out;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (i) out += '\n';
        out += lines[i];
    }
    return out;
}

}  // namespace

const std::string* PromptParts::title_of(std::string_view product_id) const {
    for (const auto& t : product_titles) {
        if (t.product_id == product_id) return &t.title;
    }
    return nullptr;
}

std::string_view ComposedPrompt::section(std::size_t i) const {
    const auto [b, e] = section_offsets.at(i);
    return std::string_view(text).substr(b, e - b);
}

ComposedPrompt compose_prompt(const PromptParts& parts) {
    parts.standalone_query.validate();
    const auto& snippets = parts.reduced_context.snippets;
    if (!snippets.empty() && parts.product_titles.empty()) {
        throw MissingTitle("context snippets need at least one product title");
    }

    std::array<std::string, 5> bodies;
    bodies[0] = parts.persona_instructions;
    while (!bodies[0].empty() && (bodies[0].back() == '\n' || bodies[0].back() == '\r')) bodies[0].pop_back();

    std::vector<std::string> lines;
    for (const auto& t : parts.product_titles) {
        lines.push_back("Product " + one_line(t.product_id) + ": " + one_line(t.title));
    }
    for (const auto& s : snippets) lines.push_back("[" + s.snippet_id + "] " + one_line(s.text));
    bodies[1] = join_lines(lines);

    lines.clear();
    for (const auto& [k, v] : parts.user_context) lines.push_back(one_line(k) + ": " + one_line(v));
    bodies[2] = join_lines(lines);

    lines.clear();
    for (Intent i : parts.routed_intents) {
        auto it = parts.intent_metadata.find(i);
        const std::string text = it == parts.intent_metadata.end() ? "" : one_line(it->second);
        lines.push_back(std::string(to_string(i)) + ": " + text);
    }
    bodies[3] = join_lines(lines);

    bodies[4] = one_line(parts.standalone_query.text);

    ComposedPrompt out;
    for (std::size_t i = 0; i < bodies.size(); ++i) {
        out.text += kSectionHeaders[i];
        out.text += '\n';
        const std::size_t begin = out.text.size();
        out.text += bodies[i];
        out.section_offsets[i] = {begin, out.text.size()};
        if (!bodies[i].empty()) out.text += '\n';
        out.text += '\n';
    }
    return out;
}

}  // namespace pqa::generation
