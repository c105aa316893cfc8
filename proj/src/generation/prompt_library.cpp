#include "pqa/generation/prompt_library.hpp"

#include <filesystem>
#include <optional>
#include <fstream>
#include <sstream>

#include "pqa/core/json_io.hpp"

namespace pqa::generation {
namespace {

std::optional<std::string> slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string s = ss.str();
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
    return s;
}

}  // namespace

PromptLibrary::PromptLibrary(std::string system, std::map<Intent, std::string> exemplars,
                             std::map<Intent, std::string> metadata)
    : system_(std::move(system)), exemplars_(std::move(exemplars)), metadata_(std::move(metadata)) {}

std::string PromptLibrary::persona(std::span<const Intent> routed) const {
    std::string out = system_;
    for (Intent i : routed) {
        auto it = exemplars_.find(i);
        if (it == exemplars_.end()) continue;
        out += "\n\nExample (" + std::string(to_string(i)) + "):\n" + it->second;
    }
    return out;
}

PromptLibrary load_prompt_library(const std::string& dir) {
    const std::filesystem::path root(dir);
    auto system = slurp(root / "system.txt");
    if (!system) throw IoError("cannot read " + (root / "system.txt").string());

    std::map<Intent, std::string> exemplars;
    for (Intent i : IntentTaxonomy::decision_labels) {
        if (auto text = slurp(root / "intents" / (std::string(to_string(i)) + ".txt"))) {
            exemplars[i] = std::move(*text);
        }
    }

    std::map<Intent, std::string> metadata;
    if (auto text = slurp(root / "metadata.json")) {
        try {
            const Json parsed = Json::parse(*text);
            for (const auto& item : parsed.items()) {
                auto intent = parse_intent(item.key());
                if (!intent) throw ParseError("unknown intent '" + item.key() + "' in metadata.json");
                metadata[*intent] = item.value().get<std::string>();
            }
        } catch (const Json::exception& e) {
            throw ParseError("metadata.json: " + std::string(e.what()));
        }
    }
    return PromptLibrary(std::move(*system), std::move(exemplars), std::move(metadata));
}

}  // namespace pqa::generation
