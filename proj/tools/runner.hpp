#pragma once

#include <ostream>

#include "run_config.hpp"

namespace ks::cli {

/// Executes one resolved command, writes its artifacts and manifest.json to
/// config.output_dir, and returns the process exit status. Library errors
/// are caught here and reported as {"error": {...}} on `err` and in the
/// manifest.
int run(RunConfig config, std::ostream& out, std::ostream& err);

}  // namespace ks::cli
