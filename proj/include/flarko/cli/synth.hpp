#pragma once

#include "flarko/cli/config.hpp"

namespace flarko::cli {

// Writes deterministic synthetic transactions/prices/assets CSVs to the
// config's data paths, using the config's column mappings as headers. Same
// seed, same bytes.
void write_synthetic_dataset(const RunConfig& config);

}  // namespace flarko::cli
