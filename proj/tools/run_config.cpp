#include "run_config.hpp"

#include <cstdlib>
#include <fstream>
#include <set>

#include "ks/errors.hpp"

namespace ks::cli {

namespace {

const std::set<std::string> kCommands{"solve", "solve-weighted", "oracle", "verify-estimates", "radius", "norms"};

template <class T>
void take(const nlohmann::json& j, const char* key, T& field) {
  if (!j.contains(key)) return;
  try {
    field = j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config field '") + key + "': " + e.what());
  }
}

}  // namespace

#define KS_CONFIG_FIELDS(X)                                                                                    \
  X(command) X(dim) X(lengths) X(cutoff) X(horizon) X(intervals) X(data) X(fixture) X(input) X(eps) X(alpha)  \
  X(seed) X(scale) X(fraction) X(target_norm) X(pair) X(p) X(tol) X(max_iter) X(weight) X(a) X(b)             \
  X(radius_times) X(noise_floor) X(dt) X(compare) X(trials) X(range) X(p_values) X(estimate_intervals)       \
  X(norms) X(output_dir) X(snapshot_times)

void to_json(nlohmann::json& j, const RunConfig& c) {
  j = nlohmann::json::object();
#define X(name) j[#name] = c.name;
  KS_CONFIG_FIELDS(X)
#undef X
}

void from_json(const nlohmann::json& j, RunConfig& c) {
  if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
  static const std::set<std::string> known{
#define X(name) #name,
      KS_CONFIG_FIELDS(X)
#undef X
  };
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) throw ConfigError("unknown config field '" + key + "'");
  }
#define X(name) take(j, #name, c.name);
  KS_CONFIG_FIELDS(X)
#undef X
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  RunConfig c;
  try {
    from_json(nlohmann::json::parse(in), c);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config file " + path + ": " + e.what());
  }
  return c;
}

void resolve(RunConfig& c) {
  if (!kCommands.count(c.command)) throw ConfigError("unknown command '" + c.command + "'");
  if (c.dim != 1 && c.dim != 2) throw ConfigError("dim must be 1 or 2");
  if (c.lengths.size() == 1 && c.dim == 2) c.lengths.push_back(c.lengths[0]);
  if (static_cast<int>(c.lengths.size()) != c.dim) throw ConfigError("need one period length per dimension");
  if (c.cutoff < 1) throw ConfigError("cutoff N must be positive");
  if (!(c.horizon > 0.0)) throw ConfigError("horizon T must be positive");
  if (c.intervals < 1) throw ConfigError("intervals must be positive");
  if (c.data != "fixture" && c.data != "file" && c.data != "random") {
    throw ConfigError("data must be fixture, file or random");
  }
  if (c.data == "file" && c.input.empty()) throw ConfigError("data=file needs --input");
  if (c.command == "norms" && c.input.empty()) throw ConfigError("norms needs --input");
  if (c.scale == "auto") c.scale = c.command == "solve-weighted" ? "gate" : "data";
  if (c.scale != "data" && c.scale != "gate" && c.scale != "none") {
    throw ConfigError("scale must be auto, data, gate or none");
  }
  if (!(c.fraction > 0.0 && c.fraction < 1.0)) throw ConfigError("fraction must lie in (0, 1)");
  if (c.target_norm < 0.0) throw ConfigError("target norm must be non-negative");
  if (!(c.tol > 0.0)) throw ConfigError("tol must be positive");
  if (c.max_iter < 1) throw ConfigError("max_iter must be positive");
  if (!(c.dt > 0.0)) throw ConfigError("dt must be positive");
  if (c.trials < 1) throw ConfigError("trials must be positive");
  if (c.range < 2) throw ConfigError("range must be at least 2");
  if (!(c.noise_floor > 0.0)) throw ConfigError("noise floor must be positive");
  for (double t : c.radius_times) {
    if (!(t > 0.0 && t <= c.horizon)) throw ConfigError("radius times must lie in (0, T]");
  }
  for (double t : c.snapshot_times) {
    if (!(t >= 0.0 && t <= c.horizon)) throw ConfigError("snapshot times must lie in [0, T]");
  }
  if (c.output_dir.empty()) {
    const char* env = std::getenv("KS_OUTPUT_DIR");
    c.output_dir = (env && *env) ? env : "ks-output";
  }
}

}  // namespace ks::cli
