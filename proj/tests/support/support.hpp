#pragma once

#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "pqa/catalog/index.hpp"
#include "pqa/core/types.hpp"
#include "pqa/generation/extractive.hpp"
#include "pqa/generation/prompt.hpp"
#include "pqa/service/pipeline.hpp"
#include "pqa/retrieval/policy_store.hpp"
#include "pqa/sts/embedding.hpp"
#include "pqa/sts/triplet.hpp"

namespace pqa::test {

std::string fixture_path(std::string_view name);
std::string read_file(const std::string& path);

/// Records of the checked-in toy catalog.
std::vector<ProductRecord> toy_records();
catalog::CatalogIndex toy_index();
retrieval::PolicyStore toy_policies();

/// Session with optional page product and previous turns.
Session make_session(std::optional<std::string> page_product_id,
                     std::vector<ConversationTurn> turns = {});
ConversationTurn make_turn(std::uint32_t index, std::string user, std::string system,
                           std::string standalone = {});

/// Embeds texts through a fixed lookup table; unknown texts map to zero.
class TableEmbedder final : public sts::Embedder {
public:
    TableEmbedder(std::size_t dim, std::vector<std::pair<std::string, std::vector<double>>> table);
    std::size_t dim() const override { return dim_; }
    sts::EmbeddingVector embed(std::string_view text) const override;

private:
    std::size_t dim_;
    std::vector<std::pair<std::string, std::vector<double>>> table_;
};

/// Pipeline over the toy catalog, policies and shipped prompt library.
std::unique_ptr<service::Pipeline> toy_pipeline(service::SessionStore& store, service::Providers providers = {},
                                                PipelineConfig config = {});
/// Session on the iPhone 13 page with a Bengaluru user profile.
std::string start_toy_session(service::SessionStore& store);

struct ScriptedTurn {
    std::string query;
    generation::ResponseKind expected;
};
/// Spec question, warranty, multi-intent, out-of-scope, product switch, IDK.
const std::vector<ScriptedTurn>& scripted_conversation();

/// Parts whose composed prompt is frozen in prompt_snapshot.txt.
generation::PromptParts snapshot_parts();

/// Random valid parts: 0-5 snippets, texts with newlines and '#', any user context.
generation::PromptParts random_parts(std::mt19937_64& rng);

/// Empty when the five sections are ordered, headed exactly, and tile the text;
/// otherwise a description of the first violation.
std::string prompt_layout_violation(const generation::ComposedPrompt& prompt);

/// |f(q) - f(p)|^2 - |f(q) - f(n)|^2 + alpha for one triplet.
double hinge_argument(const sts::Embedder& embedder, const sts::Triplet& t, double alpha);
/// No text of `t` embeds to the zero vector, where normalization is singular.
bool all_embeddable(const sts::Embedder& embedder, const sts::Triplet& t);

}  // namespace pqa::test
