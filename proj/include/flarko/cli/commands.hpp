#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "flarko/cli/config.hpp"
#include "flarko/ingest/loaders.hpp"
#include "flarko/util/date.hpp"

namespace flarko::cli {

// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitDataError = 2;
inline constexpr int kExitPartialFailure = 3;

struct Dataset {
    std::vector<ingest::TransactionRecord> transactions;
    std::map<std::string, std::vector<ingest::PriceBar>> prices;
    std::vector<ingest::AssetInfo> assets;
    ingest::LoadReport report;
};

Dataset load_dataset(const RunConfig& config);

// Users to evaluate: the configured list, else every user id seen in the
// transactions, sorted.
std::vector<std::string> resolve_users(const RunConfig& config, const Dataset& data);

int cmd_synth(const RunConfig& config, std::ostream& out);
int cmd_build_kg(const RunConfig& config, Date cutoff, std::ostream& out);
int cmd_run(const RunConfig& config, std::ostream& out);
int cmd_evaluate(const RunConfig& config, const std::filesystem::path& results_path,
                 std::ostream& out);
int cmd_report(const std::filesystem::path& metrics_json, std::ostream& out);

// Full argv-style entry point; returns the process exit code.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace flarko::cli
