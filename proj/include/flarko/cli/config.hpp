#pragma once

#include <cstdint>
#include <filesystem>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "flarko/eval/evaluation.hpp"
#include "flarko/ingest/loaders.hpp"
#include "flarko/llm/budget.hpp"
#include "flarko/llm/generator.hpp"
#include "flarko/pipeline/pipeline.hpp"
#include "flarko/util/date.hpp"

namespace flarko::cli {

struct SynthSpec {
    int users = 5;
    int assets = 8;
    Date start = Date::parse("2020-01-01");
    Date end = Date::parse("2023-06-30");
    int transactions_per_user = 40;
};

struct RunConfig {
    std::string namespace_iri = "urn:flarko:";

    std::filesystem::path transactions_path;
    std::filesystem::path prices_path;
    std::filesystem::path assets_path;
    ingest::TransactionsMapping txn_mapping;
    ingest::PricesMapping price_mapping;
    ingest::AssetsMapping asset_mapping;

    eval::EvalWindow window;
    bool active_users_only = false;
    eval::HitMode hit_mode = eval::HitMode::Binary;

    std::vector<std::string> users;  // empty: every user in the transactions
    std::vector<pipeline::Variant> variants;

    std::string selector_policy = "llm";  // llm | all | recent_k | round_robin_k
    int selector_k = 10;

    std::string generation_mode = "mock";  // mock | http
    llm::GenerationConfig generation;
    nlohmann::json mock_spec;  // MockBackend::from_spec shape
    llm::ContextBudget budget;

    std::string request_text = "Recommend three assets for me to invest in next.";
    std::string prompt_version = "v1";
    std::uint64_t seed = 42;
    std::filesystem::path output_dir = "runs/out";
    int workers = 1;

    SynthSpec synth;

    // The parsed source document, re-emitted as the config snapshot.
    nlohmann::ordered_json source;
};

// Throws ConfigError naming the offending field.
RunConfig parse_config(const nlohmann::ordered_json& doc);
RunConfig load_config(const std::filesystem::path& path);

// Throws ConfigError if a referenced data file is missing.
void validate_data_paths(const RunConfig& config);

}  // namespace flarko::cli
