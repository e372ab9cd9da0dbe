#include "flarko/cli/config.hpp"

#include <fstream>

#include "flarko/util/errors.hpp"

namespace flarko::cli {

namespace {

using nlohmann::ordered_json;

const ordered_json* find(const ordered_json& doc, const std::string& key) {
    auto it = doc.find(key);
    return it == doc.end() ? nullptr : &*it;
}

std::string get_string(const ordered_json& doc, const std::string& field,
                       const std::string& fallback) {
    const auto* v = find(doc, field);
    if (!v) return fallback;
    if (!v->is_string()) throw ConfigError("config field '" + field + "' must be a string");
    return v->get<std::string>();
}

std::int64_t get_int(const ordered_json& doc, const std::string& field, std::int64_t fallback) {
    const auto* v = find(doc, field);
    if (!v) return fallback;
    if (!v->is_number_integer()) {
        throw ConfigError("config field '" + field + "' must be an integer");
    }
    return v->get<std::int64_t>();
}

double get_number(const ordered_json& doc, const std::string& field, double fallback) {
    const auto* v = find(doc, field);
    if (!v) return fallback;
    if (!v->is_number()) throw ConfigError("config field '" + field + "' must be a number");
    return v->get<double>();
}

bool get_bool(const ordered_json& doc, const std::string& field, bool fallback) {
    const auto* v = find(doc, field);
    if (!v) return fallback;
    if (!v->is_boolean()) throw ConfigError("config field '" + field + "' must be a boolean");
    return v->get<bool>();
}

Date get_date(const ordered_json& doc, const std::string& field, Date fallback) {
    const auto* v = find(doc, field);
    if (!v) return fallback;
    if (!v->is_string()) {
        throw ConfigError("config field '" + field + "' must be a YYYY-MM-DD string");
    }
    auto parsed = Date::try_parse(v->get<std::string>());
    if (!parsed) throw ConfigError("config field '" + field + "' is not a valid date");
    return *parsed;
}

}  // namespace

RunConfig parse_config(const ordered_json& doc) {
    RunConfig config;
    config.source = doc;
    if (!doc.is_object()) throw ConfigError("config root must be a JSON object");

    config.namespace_iri = get_string(doc, "namespace", config.namespace_iri);

    if (const auto* data = find(doc, "data")) {
        config.transactions_path = get_string(*data, "transactions", "");
        config.prices_path = get_string(*data, "prices", "");
        config.assets_path = get_string(*data, "assets", "");
        if (const auto* m = find(*data, "transactions_mapping")) {
            config.txn_mapping.user_id = get_string(*m, "user_id", config.txn_mapping.user_id);
            config.txn_mapping.isin = get_string(*m, "isin", config.txn_mapping.isin);
            config.txn_mapping.txn_type = get_string(*m, "txn_type", config.txn_mapping.txn_type);
            config.txn_mapping.value = get_string(*m, "value", config.txn_mapping.value);
            config.txn_mapping.timestamp =
                get_string(*m, "timestamp", config.txn_mapping.timestamp);
        }
        if (const auto* m = find(*data, "prices_mapping")) {
            config.price_mapping.isin = get_string(*m, "isin", config.price_mapping.isin);
            config.price_mapping.date = get_string(*m, "date", config.price_mapping.date);
            config.price_mapping.close = get_string(*m, "close", config.price_mapping.close);
        }
        if (const auto* m = find(*data, "assets_mapping")) {
            config.asset_mapping.isin = get_string(*m, "isin", config.asset_mapping.isin);
            config.asset_mapping.category =
                get_string(*m, "category", config.asset_mapping.category);
            config.asset_mapping.sector = get_string(*m, "sector", config.asset_mapping.sector);
            config.asset_mapping.industry =
                get_string(*m, "industry", config.asset_mapping.industry);
        }
    }

    if (const auto* ev = find(doc, "eval")) {
        config.window.start = get_date(*ev, "start", Date::parse("2021-12-01"));
        config.window.end = get_date(*ev, "end", Date::parse("2022-11-29"));
        config.window.step_days = static_cast<int>(get_int(*ev, "step_days", 14));
        config.window.horizon_days = static_cast<int>(get_int(*ev, "horizon_days", 180));
        config.active_users_only = get_bool(*ev, "active_users_only", false);
        const std::string mode = get_string(*ev, "hit_mode", "binary");
        if (mode == "binary") config.hit_mode = eval::HitMode::Binary;
        else if (mode == "precision") config.hit_mode = eval::HitMode::Precision;
        else throw ConfigError("config field 'eval.hit_mode' must be binary|precision");
        if (config.window.step_days < 1) {
            throw ConfigError("config field 'eval.step_days' must be >= 1");
        }
        if (config.window.start > config.window.end) {
            throw ConfigError("config field 'eval.start' must not be after 'eval.end'");
        }
    } else {
        config.window.start = Date::parse("2021-12-01");
        config.window.end = Date::parse("2022-11-29");
    }

    if (const auto* users = find(doc, "users")) {
        if (!users->is_array()) throw ConfigError("config field 'users' must be an array");
        for (const auto& u : *users) {
            if (!u.is_string()) throw ConfigError("config field 'users' must hold strings");
            config.users.push_back(u.get<std::string>());
        }
    }

    if (const auto* variants = find(doc, "variants")) {
        if (!variants->is_array() || variants->empty()) {
            throw ConfigError("config field 'variants' must be a non-empty array");
        }
        for (const auto& v : *variants) {
            auto parsed = pipeline::variant_from_name(v.is_string() ? v.get<std::string>() : "");
            if (!parsed) {
                throw ConfigError(
                    "config field 'variants' entries must be "
                    "full_injection|parallel|multi_stage");
            }
            config.variants.push_back(*parsed);
        }
    } else {
        config.variants = {pipeline::Variant::FullInjection, pipeline::Variant::Parallel,
                           pipeline::Variant::MultiStage};
    }

    if (const auto* sel = find(doc, "selector")) {
        config.selector_policy = get_string(*sel, "policy", config.selector_policy);
        config.selector_k = static_cast<int>(get_int(*sel, "k", config.selector_k));
        if (config.selector_policy != "llm" && config.selector_policy != "all" &&
            config.selector_policy != "recent_k" && config.selector_policy != "round_robin_k") {
            throw ConfigError(
                "config field 'selector.policy' must be llm|all|recent_k|round_robin_k");
        }
        if (config.selector_k < 1) throw ConfigError("config field 'selector.k' must be >= 1");
    }

    if (const auto* gen = find(doc, "generation")) {
        config.generation_mode = get_string(*gen, "mode", config.generation_mode);
        if (config.generation_mode != "mock" && config.generation_mode != "http") {
            throw ConfigError("config field 'generation.mode' must be mock|http");
        }
        config.generation.endpoint_url = get_string(*gen, "endpoint_url", "");
        config.generation.model_name = get_string(*gen, "model_name", "mock-model");
        config.generation.temperature = get_number(*gen, "temperature", 0.0);
        config.generation.max_output_tokens =
            static_cast<int>(get_int(*gen, "max_output_tokens", 256));
        config.generation.timeout_ms = static_cast<int>(get_int(*gen, "timeout_ms", 30000));
        config.generation.max_retries = static_cast<int>(get_int(*gen, "max_retries", 3));
        config.generation.parallelism_cap =
            static_cast<int>(get_int(*gen, "parallelism_cap", 4));
        if (config.generation.temperature < 0) {
            throw ConfigError("config field 'generation.temperature' must be >= 0");
        }
        if (config.generation.max_output_tokens < 1) {
            throw ConfigError("config field 'generation.max_output_tokens' must be >= 1");
        }
        if (config.generation.parallelism_cap < 1) {
            throw ConfigError("config field 'generation.parallelism_cap' must be >= 1");
        }
        if (config.generation_mode == "http" && config.generation.endpoint_url.empty()) {
            throw ConfigError("config field 'generation.endpoint_url' required in http mode");
        }
        if (const auto* mock = find(*gen, "mock")) config.mock_spec = *mock;
    }
    if (config.mock_spec.is_null()) config.mock_spec = nlohmann::json{{"kind", "auto"}};

    if (const auto* budget = find(doc, "budget")) {
        config.budget.max_context_tokens = get_int(*budget, "max_context_tokens", 8192);
        config.budget.chars_per_token = get_int(*budget, "chars_per_token", 4);
        if (config.budget.chars_per_token < 1) {
            throw ConfigError("config field 'budget.chars_per_token' must be >= 1");
        }
        if (config.budget.max_context_tokens < 1) {
            throw ConfigError("config field 'budget.max_context_tokens' must be >= 1");
        }
    }

    config.request_text = get_string(doc, "request_text", config.request_text);
    config.prompt_version = get_string(doc, "prompt_version", config.prompt_version);
    config.seed = static_cast<std::uint64_t>(get_int(doc, "seed", 42));
    config.output_dir = get_string(doc, "output_dir", config.output_dir.string());
    config.workers = static_cast<int>(get_int(doc, "workers", 1));
    if (config.workers < 1) throw ConfigError("config field 'workers' must be >= 1");

    if (const auto* synth = find(doc, "synth")) {
        config.synth.users = static_cast<int>(get_int(*synth, "users", config.synth.users));
        config.synth.assets = static_cast<int>(get_int(*synth, "assets", config.synth.assets));
        config.synth.start = get_date(*synth, "start", config.synth.start);
        config.synth.end = get_date(*synth, "end", config.synth.end);
        config.synth.transactions_per_user = static_cast<int>(
            get_int(*synth, "transactions_per_user", config.synth.transactions_per_user));
        if (config.synth.users < 1 || config.synth.assets < 1) {
            throw ConfigError("config fields 'synth.users'/'synth.assets' must be >= 1");
        }
    }
    return config;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path.string());
    ordered_json doc;
    try {
        doc = ordered_json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config is not valid JSON: " + std::string(e.what()));
    }
    return parse_config(doc);
}

void validate_data_paths(const RunConfig& config) {
    const auto check = [](const std::filesystem::path& p, const char* field) {
        if (p.empty()) throw ConfigError(std::string("config field 'data.") + field + "' is required");
        if (!std::filesystem::exists(p)) {
            throw ConfigError(std::string("config field 'data.") + field +
                              "' references missing file: " + p.string());
        }
    };
    check(config.transactions_path, "transactions");
    check(config.prices_path, "prices");
    check(config.assets_path, "assets");
}

}  // namespace flarko::cli
