#pragma once

#include <map>
#include <span>
#include <string>

#include "pqa/core/types.hpp"

namespace pqa::generation {

/// Persona text, per-intent exemplars and per-intent metadata, read from
///   <dir>/system.txt, <dir>/metadata.json, <dir>/intents/<label>.txt
class PromptLibrary {
public:
    PromptLibrary() = default;
    PromptLibrary(std::string system, std::map<Intent, std::string> exemplars,
                  std::map<Intent, std::string> metadata);

    /// System text followed by the exemplar block of each routed intent.
    std::string persona(std::span<const Intent> routed) const;

    const std::string& system() const { return system_; }
    const std::map<Intent, std::string>& exemplars() const { return exemplars_; }
    const std::map<Intent, std::string>& metadata() const { return metadata_; }

private:
    std::string system_;
    std::map<Intent, std::string> exemplars_;
    std::map<Intent, std::string> metadata_;
};

/// Throws IoError when system.txt is missing, ParseError for bad metadata.
/// Missing exemplar files are skipped.
PromptLibrary load_prompt_library(const std::string& dir);

}  // namespace pqa::generation
