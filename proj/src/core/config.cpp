#include "pqa/core/config.hpp"

#include <cctype>
#include <cmath>
#include <functional>
#include <map>

#include "pqa/core/error.hpp"
#include "pqa/core/json_io.hpp"

namespace pqa {

bool is_builtin(const ProviderSelector& selector) { return selector == kBuiltinProvider; }

namespace {

bool is_url(std::string_view s) {
    return s.starts_with("http://");
}

void check_unit(std::string_view field, double v, double lo = 0.0, double hi = 1.0) {
    if (!(v >= lo && v <= hi)) {
        throw RangeError(std::string(field), "must lie in [" + std::to_string(lo) + ", " +
                                                 std::to_string(hi) + "]");
    }
}

void check_provider(std::string_view field, const ProviderSelector& p) {
    if (!is_builtin(p) && !is_url(p)) {
        throw RangeError(std::string(field), "must be 'builtin' or an http:// URL");
    }
}

// One entry per serialized field, in declaration order.
struct FieldCodec {
    std::string_view name;
    std::function<void(const Json&, PipelineConfig&)> read;
    std::function<Json(const PipelineConfig&)> write;
};

template <typename T>
FieldCodec field(std::string_view name, T PipelineConfig::*member) {
    return {name,
            [member, name](const Json& j, PipelineConfig& c) {
                if constexpr (std::is_unsigned_v<T>) {
                    if (!j.is_number_unsigned()) {
                        throw ParseError(std::string(name) + ": expected a nonnegative integer");
                    }
                } else if constexpr (std::is_integral_v<T>) {
                    if (!j.is_number_integer()) {
                        throw ParseError(std::string(name) + ": expected an integer");
                    }
                }
                try {
                    c.*member = j.get<T>();
                } catch (const nlohmann::json::exception&) {
                    throw ParseError(std::string(name) + ": wrong type " + j.type_name());
                }
            },
            [member](const PipelineConfig& c) { return Json(c.*member); }};
}

const std::vector<FieldCodec>& codecs() {
    static const std::vector<FieldCodec> table = {
        field("tau_non_decision", &PipelineConfig::tau_non_decision),
        field("tau_entropy", &PipelineConfig::tau_entropy),
        field("top_n_intents", &PipelineConfig::top_n_intents),
        field("k_context", &PipelineConfig::k_context),
        field("alpha_margin", &PipelineConfig::alpha_margin),
        field("embedding_dim", &PipelineConfig::embedding_dim),
        field("tau_idk", &PipelineConfig::tau_idk),
        field("fuzzy_threshold", &PipelineConfig::fuzzy_threshold),
        field("saq_provider", &PipelineConfig::saq_provider),
        field("intent_provider", &PipelineConfig::intent_provider),
        field("embedding_provider", &PipelineConfig::embedding_provider),
        field("generation_provider", &PipelineConfig::generation_provider),
        field("search_client", &PipelineConfig::search_client),
        field("intent_model", &PipelineConfig::intent_model),
        field("sts_model", &PipelineConfig::sts_model),
        field("prompt_dir", &PipelineConfig::prompt_dir),
        field("idk_message", &PipelineConfig::idk_message),
        field("out_of_scope_message", &PipelineConfig::out_of_scope_message),
        field("clarification_message", &PipelineConfig::clarification_message),
        field("seed", &PipelineConfig::seed),
    };
    return table;
}

}  // namespace

void PipelineConfig::validate() const {
    check_unit("tau_non_decision", tau_non_decision);
    check_unit("tau_entropy", tau_entropy);
    if (top_n_intents < 1 || top_n_intents > 12) {
        throw RangeError("top_n_intents", "must lie in [1, 12]");
    }
    if (k_context < 1) throw RangeError("k_context", "must be positive");
    if (!(alpha_margin >= 0.0) || !std::isfinite(alpha_margin)) {
        throw RangeError("alpha_margin", "must be a finite nonnegative number");
    }
    if (embedding_dim < 8) throw RangeError("embedding_dim", "must be at least 8");
    check_unit("tau_idk", tau_idk, -1.0, 1.0);
    check_unit("fuzzy_threshold", fuzzy_threshold);
    check_provider("saq_provider", saq_provider);
    check_provider("intent_provider", intent_provider);
    check_provider("embedding_provider", embedding_provider);
    check_provider("generation_provider", generation_provider);
    if (!search_client.empty() && !is_url(search_client)) {
        throw RangeError("search_client", "must be empty or an http:// URL");
    }
    if (idk_message.empty()) throw RangeError("idk_message", "must be nonempty");
}

PipelineConfig load_config(std::string_view document) {
    PipelineConfig config;
    bool blank = true;
    for (char c : document) {
        if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
    }
    if (blank) return config;

    Json j;
    try {
        j = Json::parse(document);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("config: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("config: top level must be a JSON object");

    std::map<std::string_view, const FieldCodec*> by_name;
    for (const auto& codec : codecs()) by_name[codec.name] = &codec;

    for (const auto& [key, value] : j.items()) {
        auto it = by_name.find(key);
        if (it == by_name.end()) throw ParseError("config: unknown key '" + key + "'");
        it->second->read(value, config);
    }
    config.validate();
    return config;
}

std::string serialize_config(const PipelineConfig& config) {
    Json j = Json::object();
    for (const auto& codec : codecs()) j[std::string(codec.name)] = codec.write(config);
    return j.dump(2);
}

}  // namespace pqa
