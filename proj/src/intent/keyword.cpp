#include "pqa/intent/keyword.hpp"

#include "pqa/core/text.hpp"

namespace pqa::intent {

const std::vector<LexiconEntry>& keyword_lexicon() {
    // Version 1. Changing a phrase changes classifier output; bump the version.
    static const std::vector<LexiconEntry> lexicon = {
        {Intent::non_decision,
         {"show me", "list", "compare", "find", "search for", "browse", "recommend", "suggest"}},
        {Intent::authenticity,
         {"authentic", "genuine", "original", "fake", "counterfeit", "real product", "brand new", "sealed"}},
        {Intent::checkout,
         {"checkout", "check out", "place order", "place an order", "add to cart", "cart", "buy now", "order"}},
        {Intent::delivery_sla,
         {"deliver", "delivery", "when will it arrive", "shipping", "ship", "dispatch", "arrive", "delivered"}},
        {Intent::offers_and_discounts,
         {"offer", "offers", "discount", "deal", "coupon", "cashback", "sale", "price drop"}},
        {Intent::payment_options,
         {"payment", "pay", "emi", "cash on delivery", "cod", "credit card", "upi", "net banking"}},
        {Intent::product_exchange,
         {"exchange", "trade in", "swap", "old phone", "buyback", "upgrade program", "exchange value", "trade"}},
        {Intent::product_spec,
         {"spec", "specs", "specification", "specifications", "display", "battery", "camera", "processor",
          "capacity", "storage", "ram", "screen", "charging", "waterproof", "resolution", "weight",
          "dimensions"}},
        {Intent::return_policy,
         {"return", "returns", "refund", "return policy", "send back", "money back", "returnable", "return window"}},
        {Intent::size_and_fit,
         {"size chart", "fit", "fits", "sizing", "true to size", "which size", "my size", "tight", "loose"}},
        {Intent::stock_availability,
         {"in stock", "stock", "available", "availability", "out of stock", "sold out", "restock", "when available"}},
        {Intent::variant,
         {"color", "colour", "colors", "variant", "variants", "model", "versions", "edition"}},
        {Intent::warranty,
         {"warranty", "guarantee", "guaranteed", "repair", "service center", "extended warranty",
          "manufacturer warranty", "warranty period"}},
    };
    return lexicon;
}

IntentDistribution::Values keyword_counts(std::string_view text) {
    const auto tokens = tokenize(text);
    IntentDistribution::Values counts{};
    for (const auto& entry : keyword_lexicon()) {
        for (std::string_view phrase : entry.phrases) {
            const auto needle = tokenize(phrase);
            if (needle.empty() || needle.size() > tokens.size()) continue;
            for (std::size_t i = 0; i + needle.size() <= tokens.size(); ++i) {
                bool match = true;
                for (std::size_t k = 0; k < needle.size() && match; ++k) match = tokens[i + k] == needle[k];
                if (match) counts[IntentTaxonomy::index(entry.intent)] += 1.0;
            }
        }
    }
    return counts;
}

IntentDistribution classify_keyword(std::string_view text) {
    auto counts = keyword_counts(text);
    double total = 0.0;
    for (double c : counts) total += c;

    IntentDistribution::Values scores{};
    if (total == 0.0) {
        const double rest = (1.0 - kNoMatchNonDecisionMass) / static_cast<double>(kDecisionIntentCount);
        for (Intent i : IntentTaxonomy::labels) {
            scores[IntentTaxonomy::index(i)] = IntentTaxonomy::is_decision(i) ? rest : kNoMatchNonDecisionMass;
        }
    } else {
        for (std::size_t i = 0; i < counts.size(); ++i) scores[i] = counts[i] + kKeywordPseudoCount;
    }
    return IntentDistribution::from_scores(scores);
}

}  // namespace pqa::intent
