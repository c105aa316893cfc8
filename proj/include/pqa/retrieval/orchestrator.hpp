/// @file orchestrator.hpp
/// @brief First retrieval stage: pulls raw data for each (product, intent) pair
/// from the sources mapped to that intent.

#pragma once

#include <span>
#include <string>
#include <vector>

#include "pqa/catalog/index.hpp"
#include "pqa/retrieval/policy_store.hpp"

namespace pqa::retrieval {

enum class SourceKind { structured, semi_structured, unstructured, policy };

std::string_view to_string(SourceKind kind);

/// One raw item. For structured entries `name` is the attribute name and
/// `text` its value; for Q/A entries `name` is the question and `text` the answer.
struct SourceEntry {
    SourceKind kind = SourceKind::structured;
    std::string source_name;
    std::string name;
    std::string text;
};

struct BundleGroup {
    std::string product_id;
    Intent intent = Intent::product_spec;
    std::vector<SourceEntry> entries;
};

struct SourceBundle {
    /// Products in request order, intents in request order within a product.
    std::vector<BundleGroup> groups;
    /// Requested ids missing from the catalog.
    std::vector<std::string> unknown_products;

    std::size_t entry_count() const;
    std::size_t count(SourceKind kind) const;
};

/// Which sources serve an intent.
struct IntentSources {
    bool product_content = false;  // structured + Q/A + reviews
    bool policy = false;
    /// Attribute-name keywords pulled alongside policy entries.
    std::vector<std::string_view> attribute_keywords;
};

const IntentSources& sources_for(Intent intent);

/// Throws Error when `intents` is empty or holds non_decision;
/// PolicyStoreUnavailable when a policy intent is requested and `policies` is null.
SourceBundle orchestrate(std::span<const Intent> intents, std::span<const std::string> product_ids,
                         const catalog::CatalogIndex& catalog, const PolicyStore* policies);

}  // namespace pqa::retrieval
