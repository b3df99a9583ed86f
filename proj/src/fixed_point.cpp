#include "ks/fixed_point.hpp"

#include <algorithm>
#include <cmath>

#include "ks/mild_operator.hpp"
#include "ks/norms.hpp"

namespace ks {

std::string to_string(SpacePair pair) {
  switch (pair) {
    case SpacePair::wiener: return "Y";
    case SpacePair::pseudomeasure_1d: return "PM1";
    case SpacePair::pseudomeasure_2d: return "PM2";
  }
  return "?";
}

SpacePair space_pair_from_string(const std::string& s) {
  if (s == "Y") return SpacePair::wiener;
  if (s == "PM1") return SpacePair::pseudomeasure_1d;
  if (s == "PM2") return SpacePair::pseudomeasure_2d;
  throw ConfigError("unknown space pair '" + s + "' (expected Y, PM1 or PM2)");
}

SpacePair space_pair_for(const std::string& s, int dim) {
  if (s == "PM") return dim == 1 ? SpacePair::pseudomeasure_1d : SpacePair::pseudomeasure_2d;
  return space_pair_from_string(s);
}

namespace {

// (low exponent, high exponent) of the pair; the low norm is calY for the
// Wiener pair and calPM otherwise.
std::pair<double, double> pair_exponents(SpacePair pair, double p) {
  switch (pair) {
    case SpacePair::wiener: return {-1.0, 3.0};
    case SpacePair::pseudomeasure_1d: return {-p, 2.0 + p};
    case SpacePair::pseudomeasure_2d: return {1.0 - p, 2.0 + p};
  }
  return {0.0, 0.0};
}

void check_pair(SpacePair pair, double p, int dim) {
  if (pair == SpacePair::wiener) return;
  if (!(p > 0.0 && p < 0.5)) throw ConfigError("p must lie in (0, 1/2) for the pseudomeasure pairs");
  if (pair == SpacePair::pseudomeasure_1d && dim != 1) throw ConfigError("PM1 pair requires a 1D grid");
  if (pair == SpacePair::pseudomeasure_2d && dim != 2) throw ConfigError("PM2 pair requires a 2D grid");
}

}  // namespace

double data_norm(const SpectrumField& field, SpacePair pair, double p) {
  const double m = pair_exponents(pair, p).first;
  return pair == SpacePair::wiener ? norm_Y(field, m) : norm_PM(field, m);
}

PairNorms pair_norms(const Trajectory& traj, SpacePair pair, double p) {
  const auto [lo, hi] = pair_exponents(pair, p);
  PairNorms out;
  out.low = pair == SpacePair::wiener ? norm_calY(traj, lo) : norm_calPM(traj, lo);
  out.high = norm_calX(traj, hi);
  return out;
}

BoundConstants bound_constants(const SymbolTable& table) {
  BoundConstants c;
  c.dim = table.grid().dim();
  c.kernel_sup = table.m1();
  c.omega_f_kernel = table.m1();
  c.omega_i_factor = 1.0;
  c.m2 = table.m2();
  c.m3 = table.m3();
  c.omega_f_count = table.omega_f_count();
  c.horizon = table.horizon();
  c.normalization = table.grid().normalization();
  c.table = &table;
  return c;
}

BilinearConstants bilinear_constants(SpacePair pair, double p, const BoundConstants& c,
                                     PseudomeasureHighConstant variant) {
  const double T = c.finite_mode_time();
  const double nf = static_cast<double>(c.omega_f_count);
  BilinearConstants out;
  switch (pair) {
    case SpacePair::wiener:
      out.low = 2.0 * c.dim * c.kernel_sup;
      out.high = c.omega_f_kernel * std::pow(c.m3, 3) * (c.m3 + 1.0) * T + c.omega_i_factor / c.m2;
      break;
    case SpacePair::pseudomeasure_1d: {
      const double cp = lattice_power_sum(1, 2.0 - 2.0 * p);
      const double omega_i = variant == PseudomeasureHighConstant::inverse_m2 ? cp / c.m2 : c.m2 * cp;
      const double scale = std::pow(2.0, p - 1.0);
      out.low = scale * c.kernel_sup;
      out.high = scale * (nf * c.omega_f_kernel * std::pow(c.m3, 2.0 + 2.0 * p) * T + c.omega_i_factor * omega_i);
      break;
    }
    case SpacePair::pseudomeasure_2d: {
      const double scale = std::pow(2.0, p + 1.0);
      const double tail = lattice_power_sum(2, 3.0 - 2.0 * p) / c.m2;
      out.low = scale * c.kernel_sup;
      out.high = scale * (nf * c.omega_f_kernel * std::pow(c.m3, 1.0 + 2.0 * p) * T + c.omega_i_factor * tail);
      break;
    }
  }
  return out;
}

nlohmann::json EtaBreakdown::to_json() const {
  return {{"low", normalized.low},
          {"high", normalized.high},
          {"normalization", normalization},
          {"eta", eta}};
}

EtaBreakdown compute_eta(const SolveSpec& spec, const BoundConstants& constants) {
  check_pair(spec.pair, spec.p, constants.dim);
  EtaBreakdown out;
  out.normalized = bilinear_constants(spec.pair, spec.p, constants);
  out.normalization = constants.normalization;
  out.eta = 0.5 * out.normalization * (out.normalized.low + out.normalized.high);
  return out;
}

EtaBreakdown compute_eta(const SolveSpec& spec, const SymbolTable& table) {
  return compute_eta(spec, bound_constants(table));
}

bool smallness_gate(double x0_norm, double eta) noexcept { return 4.0 * eta * x0_norm < 1.0; }

nlohmann::json GateRecord::to_json() const {
  return {{"x0_norm", x0_norm}, {"eta", eta}, {"product", product}, {"passed", passed}};
}

nlohmann::json SolveResult::to_json() const {
  return {{"iterations", iterations},
          {"residual", residual},
          {"residuals", residuals},
          {"iterate_norms", iterate_norms},
          {"gate", gate.to_json()},
          {"constants", constants.to_json()},
          {"x0_norms", {{"low", x0_norms.low}, {"high", x0_norms.high}, {"total", x0_norms.total()}}},
          {"solution_norms",
           {{"low", solution_norms.low}, {"high", solution_norms.high}, {"total", solution_norms.total()}}}};
}

Trajectory build_initial_trajectory(const SpectrumField& phi0, const SymbolTable& table,
                                    const std::vector<double>& times) {
  std::vector<SpectrumField> fields;
  fields.reserve(times.size());
  for (double t : times) fields.push_back(apply_semigroup(phi0, t, table));
  return Trajectory(times, std::move(fields));
}

SolveResult solve_mild(const Trajectory& x0, const BilinearMap& bilinear, const SolveSpec& spec,
                       const EtaBreakdown& eta, const std::optional<Trajectory>& start) {
  if (x0.nodes() < 2) throw ConfigError("the solver needs at least two time nodes");
  if (spec.max_iter < 0 || !(spec.tol > 0.0)) throw ConfigError("tol must be positive and max_iter nonnegative");
  if (start && !start->same_layout(x0)) throw ConfigError("starting iterate does not match the data layout");

  SolveResult result{x0, {}, {}, 0.0, 0, {}, eta, pair_norms(x0, spec.pair, spec.p), {}};
  GateRecord& gate = result.gate;
  gate.x0_norm = result.x0_norms.total();
  gate.eta = eta.eta;
  gate.product = 4.0 * eta.eta * gate.x0_norm;
  gate.passed = smallness_gate(gate.x0_norm, eta.eta);
  if (!gate.passed) {
    throw GateError("smallness violated: 4*eta*|x0| = " + std::to_string(gate.product) + " >= 1", gate.product);
  }

  auto pair_total = [&](const Trajectory& x) { return pair_norms(x, spec.pair, spec.p).total(); };
  auto step = [&](const Trajectory& x) {
    Trajectory y = bilinear(x, x);
    y *= Complex(-0.5);
    y += x0;
    return y;
  };
  auto distance = [&](const Trajectory& a, const Trajectory& b) { return pair_total(a - b); };

  auto outcome = picard_iterate(start ? *start : x0, step, distance, pair_total, spec.tol, spec.max_iter);
  result.solution = std::move(outcome.solution);
  result.iterate_norms = std::move(outcome.iterate_norms);
  result.residuals = std::move(outcome.residuals);
  result.residual = result.residuals.back();
  result.iterations = outcome.iterations;
  result.solution_norms = pair_norms(result.solution, spec.pair, spec.p);
  return result;
}

SolveResult picard_solve(const Trajectory& x0, const SolveSpec& spec, const SymbolTable& table,
                         const std::optional<Trajectory>& start) {
  if (!(x0.grid() == table.grid())) throw ConfigError("data and symbol table grids differ");
  EtaBreakdown eta = compute_eta(spec, table);
  if (spec.eta > 0.0) {
    if (spec.eta < eta.eta) throw ConfigError("requested eta is below the computed bilinear bound");
    eta.eta = spec.eta;
  }
  const BilinearMap bilinear = [&table](const Trajectory& F, const Trajectory& G) {
    return duhamel_bilinear(F, G, table);
  };
  return solve_mild(x0, bilinear, spec, eta, start);
}

}  // namespace ks
