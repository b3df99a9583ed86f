#include <cstring>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ks/errors.hpp"
#include "run_config.hpp"
#include "runner.hpp"

using ks::cli::RunConfig;

namespace {

// The config file supplies defaults that flags then override, so it has to be
// read before the flags are bound.
std::string find_config_path(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--config") == 0 && i + 1 < argc) return argv[i + 1];
    if (std::strncmp(argv[i], "--config=", 9) == 0) return argv[i] + 9;
  }
  return {};
}

void bind_options(CLI::App& app, RunConfig& c) {
  app.add_option("--dim", c.dim, "Spatial dimension (1 or 2)");
  app.add_option("--L", c.lengths, "Period length(s); one value is used for every axis")->delimiter(',');
  app.add_option("--N", c.cutoff, "Fourier cutoff: |k_i| <= N");
  app.add_option("--T", c.horizon, "Time horizon");
  app.add_option("--intervals", c.intervals, "Time intervals on [0, T]");

  app.add_option("--data", c.data, "Data source: fixture, file or random");
  app.add_option("--fixture", c.fixture, "Named fixture: cos1, pm-boundary, y-lacunary");
  app.add_option("--input", c.input, "Snapshot CSV (initial data, or the field for 'norms')");
  app.add_flag("--random", "Seeded random initial data");
  app.add_option("--eps", c.eps, "Fixture amplitude before scaling");
  app.add_option("--alpha", c.alpha, "Random data envelope |k|^-alpha");
  app.add_option("--seed", c.seed, "Seed for random data and estimate scans");
  app.add_option("--scale", c.scale, "Data scaling: auto, data, gate or none");
  app.add_option("--fraction", c.fraction, "Target of the data scaling, in (0, 1)");
  app.add_option("--target-norm", c.target_norm, "Rescale the data to this norm in the pair's data space");

  app.add_option("--pair", c.pair, "Space pair: Y, PM (PM1/PM2 by dimension)");
  app.add_option("--p", c.p, "Pseudomeasure exponent p in (0, 1/2)");
  app.add_option("--tol", c.tol, "Picard residual tolerance");
  app.add_option("--max-iter", c.max_iter, "Picard iteration cap");

  app.add_option("--weight", c.weight, "Weight kind: linear or fourth-root");
  app.add_option("--a", c.a, "Fourth-root weight parameter");
  app.add_option("--b", c.b, "Linear weight parameter (default 0.9 M2/2)");
  app.add_option("--radius-times", c.radius_times, "Times at which to fit the decay rate")->delimiter(',');
  app.add_option("--noise-floor", c.noise_floor, "Shell maxima below this are ignored by the fit");

  app.add_option("--dt", c.dt, "Reference integrator step");
  app.add_flag("--compare", c.compare, "Also run the Picard solver and report the difference");

  app.add_option("--trials", c.trials, "Random trials per estimate");
  app.add_option("--range", c.range, "Lattice range of the elementary scans");
  app.add_option("--p-values", c.p_values, "p values of the elementary scans")->delimiter(',');
  app.add_option("--estimate-intervals", c.estimate_intervals, "Time intervals of the estimate scans");

  app.add_option("--norms", c.norms, "Comma-separated norm ids, e.g. Y[-1],PM[-0.25]");
  app.add_option("--out", c.output_dir, "Output directory (default $KS_OUTPUT_DIR or ./ks-output)");
  app.add_option("--snapshot-times", c.snapshot_times, "Times to write snapshots at (default T)")->delimiter(',');
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig config;
  const std::string config_path = find_config_path(argc, argv);
  if (!config_path.empty()) {
    try {
      config = ks::cli::load_config_file(config_path);
    } catch (const ks::Error& e) {
      std::cerr << R"({"error":{"category":")" << e.category() << R"(","exit_code":)" << e.exit_code()
                << R"(,"message":)" << nlohmann::json(e.what()).dump() << "}}\n";
      return e.exit_code();
    }
  }

  CLI::App app{"Mild solutions of the Kuramoto-Sivashinsky equation on periodic domains"};
  app.set_version_flag("--version", KS_VERSION);
  std::string unused;
  app.add_option("--config", unused, "JSON file with run configuration fields");
  bind_options(app, config);
  app.require_subcommand(0, 1);
  for (const char* name : {"solve", "solve-weighted", "oracle", "verify-estimates", "radius", "norms"}) {
    app.add_subcommand(name)->fallthrough();
  }
  app.get_subcommand("solve")->description("Picard iteration for the mild formulation");
  app.get_subcommand("solve-weighted")->description("Picard iteration for the exponentially weighted system");
  app.get_subcommand("oracle")->description("Reference time integration of the truncated Galerkin system");
  app.get_subcommand("verify-estimates")->description("Randomized and exhaustive checks of the estimates");
  app.get_subcommand("radius")->description("Decay-rate fits of a solved trajectory");
  app.get_subcommand("norms")->description("Norms of a snapshot file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (!app.get_subcommands().empty()) config.command = app.get_subcommands().front()->get_name();
  if (config.command.empty()) {
    std::cerr << R"({"error":{"category":"invalid_config","exit_code":2,"message":"no command given"}})" << '\n';
    return 2;
  }
  if (app.count("--random")) config.data = "random";
  if (app.count("--input") && config.command != "norms") config.data = "file";
  if (app.count("--fixture")) config.data = "fixture";
  return ks::cli::run(config, std::cout, std::cerr);
}
