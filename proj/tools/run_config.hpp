#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace ks::cli {

// Every field has a JSON key of the same name; a config file may set any
// subset and command-line flags override it.
struct RunConfig {
  std::string command;  // solve | solve-weighted | oracle | verify-estimates | radius | norms

  // Domain and discretization.
  int dim = 1;
  std::vector<double> lengths{3.141592653589793};
  int cutoff = 32;
  double horizon = 1.0;
  int intervals = 200;

  // Initial data: a named fixture, a snapshot file, or a seeded random field.
  std::string data = "fixture";  // fixture | file | random
  std::string fixture = "cos1";
  std::string input;
  double eps = 1.0;    // fixture amplitude before scaling
  double alpha = 2.0;  // random data: |k|^{-alpha} envelope
  std::uint64_t seed = 7;

  // Scaling of the data before a solve. "data": |phi0| = fraction/(4 eta)
  // in the data norm of the pair; "gate": 4 eta |x0| = fraction; "none":
  // data as given; "auto": gate for solve-weighted, data otherwise. A
  // positive target_norm sets the data norm directly.
  std::string scale = "auto";
  double fraction = 0.9;
  double target_norm = 0.0;

  // Function-space pair and solver controls.
  std::string pair = "Y";  // Y | PM
  double p = 0.25;
  double tol = 1e-10;
  int max_iter = 100;

  // Weighted system; b <= 0 selects 0.9 * M2/2.
  std::string weight = "linear";  // linear | fourth-root
  double a = 1.0;
  double b = 0.0;

  // Radius fits.
  std::vector<double> radius_times{0.1, 0.5, 1.0};
  double noise_floor = 1e-14;

  // Reference integrator.
  double dt = 1e-4;
  bool compare = false;

  // Estimate scans.
  int trials = 200;
  int range = 30;
  std::vector<double> p_values{0.1, 0.25, 0.4};
  int estimate_intervals = 64;

  // Norm reports.
  std::string norms = "Y[-1],PM[-0.25]";

  // Output. Empty: $KS_OUTPUT_DIR, else ./ks-output.
  std::string output_dir;
  std::vector<double> snapshot_times;  // empty: final time only
};

void to_json(nlohmann::json& j, const RunConfig& c);
/// Only keys present in j are assigned; unknown keys throw ConfigError.
void from_json(const nlohmann::json& j, RunConfig& c);

RunConfig load_config_file(const std::string& path);

/// Fills derived defaults (lengths broadcast to dim, output directory) and
/// throws ConfigError on inconsistent combinations.
void resolve(RunConfig& c);

}  // namespace ks::cli
