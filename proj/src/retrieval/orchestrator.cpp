#include "pqa/retrieval/orchestrator.hpp"

#include <algorithm>
#include <array>

#include "pqa/core/text.hpp"

namespace pqa::retrieval {
namespace {

// Intent -> data sources. Indexed by taxonomy position.
const std::array<IntentSources, kIntentCount>& source_table() {
    static const std::array<IntentSources, kIntentCount> table = [] {
        std::array<IntentSources, kIntentCount> t{};
        auto content = [&](Intent i) { t[IntentTaxonomy::index(i)].product_content = true; };
        auto policy = [&](Intent i, std::vector<std::string_view> keywords) {
            t[IntentTaxonomy::index(i)] = {false, true, std::move(keywords)};
        };
        content(Intent::product_spec);
        content(Intent::size_and_fit);
        content(Intent::variant);
        content(Intent::authenticity);
        policy(Intent::checkout, {"checkout", "cart", "order"});
        policy(Intent::delivery_sla, {"delivery", "shipping", "dispatch"});
        policy(Intent::offers_and_discounts, {"offer", "discount", "price", "cashback", "coupon"});
        policy(Intent::payment_options, {"payment", "emi", "cod"});
        policy(Intent::product_exchange, {"exchange"});
        policy(Intent::return_policy, {"return", "refund"});
        policy(Intent::stock_availability, {"stock", "availability", "available"});
        policy(Intent::warranty, {"warranty", "guarantee"});
        return t;
    }();
    return table;
}

bool attribute_matches(const std::string& attribute, const IntentSources& sources) {
    const std::string norm = normalize_text(attribute);
    return std::any_of(sources.attribute_keywords.begin(), sources.attribute_keywords.end(),
                       [&](std::string_view k) { return norm.find(k) != std::string::npos; });
}

std::vector<SourceEntry> gather(const ProductRecord& p, Intent intent, const PolicyStore* policies) {
    const IntentSources& sources = sources_for(intent);
    std::vector<SourceEntry> out;
    if (sources.product_content) {
        for (const auto& [name, value] : p.structured) {
            out.push_back({SourceKind::structured, "catalog.attributes", name, value});
        }
        for (const auto& qa : p.semi_structured) {
            out.push_back({SourceKind::semi_structured, "catalog.qna", qa.question, qa.answer});
        }
        for (const auto& review : p.unstructured) {
            out.push_back({SourceKind::unstructured, "catalog.reviews", "", review});
        }
    }
    if (sources.policy) {
        for (const PolicyEntry* e : policies->lookup(p.product_id, intent)) {
            out.push_back({SourceKind::policy, "policy." + std::string(to_string(intent)), "", e->text});
        }
        for (const auto& [name, value] : p.structured) {
            if (attribute_matches(name, sources)) {
                out.push_back({SourceKind::structured, "catalog.attributes", name, value});
            }
        }
    }
    return out;
}

}  // namespace

std::string_view to_string(SourceKind kind) {
    switch (kind) {
        case SourceKind::structured: return "structured";
        case SourceKind::semi_structured: return "semi_structured";
        case SourceKind::unstructured: return "unstructured";
        case SourceKind::policy: return "policy";
    }
    return "structured";
}

std::size_t SourceBundle::entry_count() const {
    std::size_t n = 0;
    for (const auto& g : groups) n += g.entries.size();
    return n;
}

std::size_t SourceBundle::count(SourceKind kind) const {
    std::size_t n = 0;
    for (const auto& g : groups) {
        n += static_cast<std::size_t>(std::count_if(g.entries.begin(), g.entries.end(),
                                                    [&](const SourceEntry& e) { return e.kind == kind; }));
    }
    return n;
}

const IntentSources& sources_for(Intent intent) {
    return source_table()[IntentTaxonomy::index(intent)];
}

SourceBundle orchestrate(std::span<const Intent> intents, std::span<const std::string> product_ids,
                         const catalog::CatalogIndex& catalog, const PolicyStore* policies) {
    if (intents.empty()) throw Error("orchestrate needs at least one intent");
    for (Intent i : intents) {
        if (!IntentTaxonomy::is_decision(i)) throw Error("non_decision has no retrieval sources");
        if (sources_for(i).policy && policies == nullptr) {
            throw PolicyStoreUnavailable("no policy store loaded for " + std::string(to_string(i)));
        }
    }

    SourceBundle bundle;
    for (const auto& id : product_ids) {
        const ProductRecord* p = catalog.find(id);
        if (p == nullptr &&
            std::find(bundle.unknown_products.begin(), bundle.unknown_products.end(), id) ==
                bundle.unknown_products.end()) {
            bundle.unknown_products.push_back(id);
        }
        for (Intent intent : intents) {
            BundleGroup group{id, intent, {}};
            if (p != nullptr) group.entries = gather(*p, intent, policies);
            bundle.groups.push_back(std::move(group));
        }
    }
    return bundle;
}

}  // namespace pqa::retrieval
