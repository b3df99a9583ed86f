#include "runner.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "ks/errors.hpp"
#include "ks/estimate_lab.hpp"
#include "ks/fixed_point.hpp"
#include "ks/fixtures.hpp"
#include "ks/galerkin_oracle.hpp"
#include "ks/gevrey.hpp"
#include "ks/norms.hpp"
#include "ks/snapshot.hpp"

#ifndef KS_VERSION
#define KS_VERSION "unknown"
#endif

namespace ks::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Collects artifacts and the manifest of one run.
class Session {
 public:
  Session(const RunConfig& cfg, std::ostream& out) : out_(out), dir_(cfg.output_dir) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw ConfigError("cannot create output directory " + dir_.string() + ": " + ec.message());
    manifest_["command"] = cfg.command;
    manifest_["version"] = KS_VERSION;
    manifest_["config"] = cfg;
  }

  json& manifest() { return manifest_; }
  std::ostream& out() { return out_; }

  fs::path file(const std::string& name) {
    files_.push_back(name);
    return dir_ / name;
  }

  void write_json(const std::string& name, const json& j) {
    std::ofstream f(file(name));
    f << j.dump(2) << '\n';
  }

  void finish(const std::string& status) {
    manifest_["status"] = status;
    manifest_["files"] = files_;
    std::ofstream f(dir_ / "manifest.json");
    f << manifest_.dump(2) << '\n';
  }

 private:
  std::ostream& out_;
  fs::path dir_;
  json manifest_;
  std::vector<std::string> files_;
};

struct Domain {
  TorusGrid grid;
  SymbolTable table;
  std::vector<double> times;
};

Domain make_domain(const RunConfig& cfg) {
  TorusGrid grid(cfg.lengths, cfg.cutoff);
  SymbolTable table = build_symbol_table(grid, cfg.horizon);
  return {grid, std::move(table), uniform_times(cfg.horizon, cfg.intervals)};
}

json constants_json(const SymbolTable& t) {
  return {{"M1", t.m1()},
          {"M2", t.m2()},
          {"M3", t.m3()},
          {"caseA", t.case_a()},
          {"min_sigma", t.min_sigma()},
          {"omega_f_count", t.omega_f_count()},
          {"normalization", t.grid().normalization()}};
}

SpectrumField load_data(const RunConfig& cfg, const TorusGrid& grid) {
  if (cfg.data == "file") return snapshot_field(read_snapshot(fs::path(cfg.input)), cfg.lengths, cfg.cutoff);
  if (cfg.data == "random") {
    Rng rng(cfg.seed);
    return random_field(grid, cfg.alpha, rng);
  }
  SpectrumField f = named_fixture(cfg.fixture, grid);
  f *= Complex(cfg.eps);
  return f;
}

// Rescales phi0 per cfg.scale / cfg.target_norm. `gate_norm` is the pair norm
// of the free evolution of phi0 (linear in phi0).
double scale_factor(const RunConfig& cfg, double data, double gate_norm, double eta) {
  double target = 0.0;
  if (cfg.target_norm > 0.0) {
    target = cfg.target_norm / data;
  } else if (cfg.scale == "data") {
    target = cfg.fraction / (4.0 * eta) / data;
  } else if (cfg.scale == "gate") {
    target = cfg.fraction / (4.0 * eta * gate_norm);
  } else {
    return 1.0;
  }
  if (!(data > 0.0) || !std::isfinite(target)) throw ConfigError("cannot rescale zero initial data");
  return target;
}

std::size_t node_at(const std::vector<double>& times, double t) {
  std::size_t best = 0;
  for (std::size_t n = 1; n < times.size(); ++n) {
    if (std::abs(times[n] - t) < std::abs(times[best] - t)) best = n;
  }
  return best;
}

// Final node only unless snapshot times are requested.
std::vector<std::size_t> snapshot_nodes(const RunConfig& cfg, const std::vector<double>& times) {
  if (cfg.snapshot_times.empty()) return {times.size() - 1};
  std::vector<std::size_t> nodes;
  for (double t : cfg.snapshot_times) nodes.push_back(node_at(times, t));
  return nodes;
}

json write_snapshots(Session& s, const Trajectory& traj, const std::vector<std::size_t>& nodes,
                     const std::string& stem) {
  json index = json::array();
  for (std::size_t n : nodes) {
    const std::string name = stem + "_" + std::to_string(n) + ".csv";
    save_snapshot(traj[n], s.file(name));
    index.push_back({{"file", name}, {"node", n}, {"t", traj.time(n)}});
  }
  return index;
}

// Per-node field norms in the two spaces of the pair.
void write_norm_series(Session& s, const std::string& name, const Trajectory& traj, SpacePair pair, double p) {
  const double low = pair == SpacePair::wiener ? -1.0 : (pair == SpacePair::pseudomeasure_1d ? -p : 1.0 - p);
  const double high = pair == SpacePair::wiener ? 3.0 : 2.0 + p;
  const std::string low_name = pair == SpacePair::wiener ? "Y[" + fmt(low) + "]" : "PM[" + fmt(low) + "]";
  std::ofstream f(s.file(name));
  f << "t," << low_name << ",Y[" << fmt(high) << "]\n";
  for (std::size_t n = 0; n < traj.nodes(); ++n) {
    const double a = pair == SpacePair::wiener ? norm_Y(traj[n], low) : norm_PM(traj[n], low);
    f << fmt(traj.time(n)) << ',' << fmt(a) << ',' << fmt(norm_Y(traj[n], high)) << '\n';
  }
}

void write_residuals(Session& s, const SolveResult& r) {
  std::ofstream f(s.file("residuals.csv"));
  f << "iteration,residual,iterate_norm\n";
  for (std::size_t m = 0; m < r.residuals.size(); ++m) {
    const double norm = m < r.iterate_norms.size() ? r.iterate_norms[m] : std::nan("");
    f << m + 1 << ',' << fmt(r.residuals[m]) << ',' << fmt(norm) << '\n';
  }
}

SolveSpec solve_spec(const RunConfig& cfg) {
  SolveSpec spec;
  spec.pair = space_pair_for(cfg.pair, cfg.dim);
  spec.p = cfg.p;
  spec.tol = cfg.tol;
  spec.max_iter = cfg.max_iter;
  return spec;
}

// Unweighted data preparation shared by solve, oracle and radius.
SpectrumField scaled_data(Session& s, const RunConfig& cfg, const Domain& d, const SolveSpec& spec,
                          const EtaBreakdown& eta) {
  SpectrumField phi0 = load_data(cfg, d.grid);
  const double gate = pair_norms(build_initial_trajectory(phi0, d.table, d.times), spec.pair, spec.p).total();
  const double factor = scale_factor(cfg, data_norm(phi0, spec.pair, spec.p), gate, eta.eta);
  phi0 *= Complex(factor);
  s.manifest()["data"] = {{"scale_factor", factor}, {"data_norm", data_norm(phi0, spec.pair, spec.p)}};
  save_snapshot(phi0, s.file("data.csv"));
  return phi0;
}

GevreyWeight linear_weight(const RunConfig& cfg, const SymbolTable& table) {
  return {WeightKind::linear, cfg.b > 0.0 ? cfg.b : 0.9 * table.m2() / 2.0};
}

void write_radius(Session& s, const RunConfig& cfg, const Trajectory& psi, const SymbolTable& table, bool strict) {
  const GevreyWeight lin = linear_weight(cfg, table);
  const GevreyWeight root{WeightKind::fourth_root, cfg.a};
  std::vector<RadiusRow> rows;
  json fits = json::array();
  for (double t : cfg.radius_times) {
    const std::size_t n = node_at(psi.times(), t);
    try {
      RadiusFit fit = estimate_radius(psi[n], cfg.noise_floor);
      fit.time = psi.time(n);
      rows.push_back({fit.time, fit.rho, weight_value(lin, fit.time), weight_value(root, fit.time), fit.residual});
      fits.push_back({{"t", fit.time},
                      {"rho", fit.rho},
                      {"shells_used", fit.shells_used},
                      {"shell_max", fit.shell_max},
                      {"fit_residual", fit.residual}});
    } catch (const InsufficientDataError& e) {
      if (strict) throw;
      fits.push_back({{"t", psi.time(n)}, {"error", e.what()}});
    }
  }
  std::ofstream f(s.file("radius.csv"));
  write_radius_csv(f, rows);
  s.manifest()["radius"] = {{"noise_floor", cfg.noise_floor}, {"b", lin.param}, {"a", root.param}, {"fits", fits}};
}

void run_solve(Session& s, const RunConfig& cfg) {
  const Domain d = make_domain(cfg);
  const SolveSpec spec = solve_spec(cfg);
  const EtaBreakdown eta = compute_eta(spec, d.table);
  s.manifest()["constants"] = constants_json(d.table);
  s.manifest()["eta"] = eta.to_json();
  const SpectrumField phi0 = scaled_data(s, cfg, d, spec, eta);

  const SolveResult r = picard_solve(build_initial_trajectory(phi0, d.table, d.times), spec, d.table);
  s.manifest()["result"] = r.to_json();
  s.manifest()["snapshots"] = write_snapshots(s, r.solution, snapshot_nodes(cfg, d.times), "solution");
  write_residuals(s, r);
  write_norm_series(s, "norms_vs_t.csv", r.solution, spec.pair, spec.p);
  s.out() << "solve: " << r.iterations << " iterations, residual " << fmt(r.residual) << ", gate "
          << fmt(r.gate.product) << '\n';
}

void run_solve_weighted(Session& s, const RunConfig& cfg) {
  const Domain d = make_domain(cfg);
  const SolveSpec spec = solve_spec(cfg);
  const WeightKind kind = weight_kind_from_string(cfg.weight);
  const GevreyWeight w = kind == WeightKind::linear ? linear_weight(cfg, d.table) : GevreyWeight{kind, cfg.a};
  check_admissible(w, d.table);
  const BoundConstants constants = weighted_bound_constants(w, d.table);
  const EtaBreakdown eta = compute_eta(spec, constants);
  s.manifest()["constants"] = constants_json(d.table);
  s.manifest()["weight"] = {{"kind", to_string(w.kind)}, {"param", w.param}};
  s.manifest()["eta"] = eta.to_json();

  SpectrumField phi0 = load_data(cfg, d.grid);
  const double gate =
      pair_norms(weighted_initial_trajectory(phi0, w, d.table, d.times), spec.pair, spec.p).total();
  const double factor = scale_factor(cfg, data_norm(phi0, spec.pair, spec.p), gate, eta.eta);
  phi0 *= Complex(factor);
  s.manifest()["data"] = {{"scale_factor", factor}, {"data_norm", data_norm(phi0, spec.pair, spec.p)}};
  save_snapshot(phi0, s.file("data.csv"));

  const SolveResult r = solve_weighted(phi0, w, spec, d.table, d.times);
  const Trajectory psi = apply_weight(r.solution, w, -1.0);
  s.manifest()["result"] = r.to_json();
  const auto nodes = snapshot_nodes(cfg, d.times);
  s.manifest()["snapshots"] = {{"weighted", write_snapshots(s, r.solution, nodes, "weighted")},
                               {"unweighted", write_snapshots(s, psi, nodes, "solution")}};
  write_residuals(s, r);
  write_norm_series(s, "norms_vs_t.csv", psi, spec.pair, spec.p);
  write_radius(s, cfg, psi, d.table, false);
  s.out() << "solve-weighted (" << to_string(w.kind) << ' ' << fmt(w.param) << "): " << r.iterations
          << " iterations, residual " << fmt(r.residual) << ", gate " << fmt(r.gate.product) << '\n';
}

void run_radius(Session& s, const RunConfig& cfg) {
  const Domain d = make_domain(cfg);
  const SolveSpec spec = solve_spec(cfg);
  const EtaBreakdown eta = compute_eta(spec, d.table);
  s.manifest()["constants"] = constants_json(d.table);
  s.manifest()["eta"] = eta.to_json();
  const SpectrumField phi0 = scaled_data(s, cfg, d, spec, eta);
  const SolveResult r = picard_solve(build_initial_trajectory(phi0, d.table, d.times), spec, d.table);
  s.manifest()["result"] = r.to_json();
  write_radius(s, cfg, r.solution, d.table, true);
  s.out() << "radius: " << cfg.radius_times.size() << " fits written to radius.csv\n";
}

void run_oracle(Session& s, const RunConfig& cfg) {
  const Domain d = make_domain(cfg);
  const SolveSpec spec = solve_spec(cfg);
  const EtaBreakdown eta = compute_eta(spec, d.table);
  s.manifest()["constants"] = constants_json(d.table);
  s.manifest()["eta"] = eta.to_json();
  const SpectrumField phi0 = scaled_data(s, cfg, d, spec, eta);

  OracleConfig oc;
  oc.dt = cfg.dt;
  oc.output_times = d.times;
  const Trajectory traj = integrate(phi0, oc, d.table);
  const auto nodes = snapshot_nodes(cfg, d.times);
  s.manifest()["snapshots"] = write_snapshots(s, traj, nodes, "oracle");
  write_norm_series(s, "norms_vs_t.csv", traj, spec.pair, spec.p);

  if (cfg.compare) {
    const SolveResult r = picard_solve(build_initial_trajectory(phi0, d.table, d.times), spec, d.table);
    json cmp = json::array();
    for (std::size_t n : nodes) {
      double diff = 0.0, ref = 0.0;
      for (std::size_t i = 0; i < traj[n].size(); ++i) {
        diff += std::norm(r.solution[n][i] - traj[n][i]);
        ref += std::norm(traj[n][i]);
      }
      const double rel = ref > 0.0 ? std::sqrt(diff / ref) : std::sqrt(diff);
      cmp.push_back({{"t", traj.time(n)}, {"relative_l2_error", rel}});
      s.out() << "oracle vs mild at t=" << fmt(traj.time(n)) << ": relative l2 error " << fmt(rel) << '\n';
    }
    s.manifest()["comparison"] = cmp;
    s.manifest()["result"] = r.to_json();
  } else {
    s.out() << "oracle: integrated to t=" << fmt(traj.times().back()) << '\n';
  }
}

void run_verify(Session& s, const RunConfig& cfg) {
  const Domain d = make_domain(cfg);
  s.manifest()["constants"] = constants_json(d.table);
  s.manifest()["seeds"] = {{"estimates", cfg.seed}};

  std::vector<EstimateReport> reports;
  auto append = [&](std::vector<EstimateReport> more) {
    for (auto& r : more) reports.push_back(std::move(r));
  };
  for (double p : cfg.p_values) append(check_elementary_inequalities(cfg.dim, cfg.range, p));
  const double m1 = cfg.dim == 1 ? -0.25 : 0.75;
  append(check_linear_estimates(d.table, cfg.trials, cfg.seed, m1, 2.25, cfg.horizon, cfg.estimate_intervals));
  append(check_bilinear_estimates(d.table, cfg.trials, cfg.seed, SpacePair::wiener, cfg.p, cfg.horizon,
                                  cfg.estimate_intervals));
  append(check_bilinear_estimates(d.table, cfg.trials, cfg.seed, space_pair_for("PM", cfg.dim), cfg.p,
                                  cfg.horizon, cfg.estimate_intervals));
  std::vector<GevreyWeight> weights{linear_weight(cfg, d.table)};
  for (double a : {0.5, 1.0, 2.0}) weights.push_back({WeightKind::fourth_root, a});
  const auto grid = log_spaced(1e-6, 10.0, 60);
  append(check_gevrey_lemmas(d.table, weights, grid, grid));

  std::ofstream f(s.file("estimates.jsonl"));
  json failed = json::array();
  for (const auto& r : reports) {
    f << r.to_json().dump() << '\n';
    s.out() << (r.passed ? "PASS " : (r.informational ? "INFO " : "FAIL ")) << r.id << " worst_ratio "
            << fmt(r.worst_ratio) << '\n';
    if (!r.passed && !r.informational) failed.push_back(r.id);
  }
  s.manifest()["result"] = {{"reports", reports.size()}, {"failed", failed}};
  if (!failed.empty()) throw EstimateViolation(std::to_string(failed.size()) + " estimate(s) violated");
}

void run_norms(Session& s, const RunConfig& cfg) {
  const Snapshot snap = read_snapshot(fs::path(cfg.input));
  std::vector<double> lengths = cfg.lengths;
  if (lengths.size() == 1 && snap.dim == 2) lengths.push_back(lengths[0]);
  if (static_cast<int>(lengths.size()) != snap.dim) lengths.assign(snap.dim, 3.141592653589793);
  const SpectrumField field = snapshot_field(snap, lengths);
  const NormReport report = make_norm_report(field, parse_norm_list(cfg.norms));
  const json j = report.to_json();
  s.write_json("norms.json", j);
  s.manifest()["result"] = j;
  s.out() << j.dump() << '\n';
}

}  // namespace

int run(RunConfig cfg, std::ostream& out, std::ostream& err) {
  std::optional<Session> session;
  try {
    resolve(cfg);
    session.emplace(cfg, out);
    Session& s = *session;
    if (cfg.data == "random") s.manifest()["seeds"] = {{"data", cfg.seed}};
    if (cfg.command == "solve") run_solve(s, cfg);
    else if (cfg.command == "solve-weighted") run_solve_weighted(s, cfg);
    else if (cfg.command == "radius") run_radius(s, cfg);
    else if (cfg.command == "oracle") run_oracle(s, cfg);
    else if (cfg.command == "verify-estimates") run_verify(s, cfg);
    else run_norms(s, cfg);
    s.finish("ok");
    return 0;
  } catch (const Error& e) {
    json error{{"category", e.category()}, {"exit_code", e.exit_code()}, {"message", e.what()}};
    if (const auto* g = dynamic_cast<const GateError*>(&e)) error["product"] = g->product();
    if (const auto* c = dynamic_cast<const ConvergenceError*>(&e)) error["residuals"] = c->residuals();
    if (const auto* i = dynamic_cast<const InstabilityError*>(&e)) error["last_good_time"] = i->last_good_time();
    if (const auto* p = dynamic_cast<const ParseError*>(&e)) error["line"] = p->line();
    err << json{{"error", error}}.dump() << '\n';
    if (session) {
      session->manifest()["error"] = error;
      session->finish("error");
    }
    return e.exit_code();
  }
}

}  // namespace ks::cli
