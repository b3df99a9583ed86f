#include "ks/gevrey.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "ks/errors.hpp"
#include "ks/mild_operator.hpp"

namespace ks {

std::string to_string(WeightKind kind) { return kind == WeightKind::linear ? "linear" : "fourth_root"; }

WeightKind weight_kind_from_string(const std::string& s) {
  if (s == "linear") return WeightKind::linear;
  if (s == "fourth_root" || s == "fourth-root") return WeightKind::fourth_root;
  throw ConfigError("unknown weight kind '" + s + "' (expected linear or fourth_root)");
}

double weight_value(const GevreyWeight& w, double t) {
  if (!(t >= 0.0)) throw ConfigError("weight time must be nonnegative");
  return w.kind == WeightKind::linear ? w.param * t : w.param * std::pow(t, 0.25);
}

double fourth_root_constant(double a, double m2) {
  if (!(m2 > 0.0) || !(a >= 0.0)) throw ConfigError("fourth_root_constant needs a >= 0 and m2 > 0");
  const double z = std::cbrt(a / (2.0 * m2));
  return std::max(0.75 * a * z, 1.0);
}

void check_admissible(const GevreyWeight& w, const SymbolTable& table) {
  if (!(w.param >= 0.0) || !std::isfinite(w.param)) throw ConfigError("weight parameter must be finite and >= 0");
  if (w.kind == WeightKind::linear && !(w.param < table.m2() / 2.0)) {
    throw ConfigError("linear weight needs b < M2/2 = " + std::to_string(table.m2() / 2.0));
  }
}

SpectrumField weighted_semigroup(const SpectrumField& V0, double t, const GevreyWeight& w,
                                 const SymbolTable& table) {
  check_admissible(w, table);
  SpectrumField out = apply_semigroup(V0, t, table);
  const double g = weight_value(w, t);
  if (g == 0.0) return out;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= std::exp(g * out.grid().norm(i));
  return out;
}

Trajectory apply_weight(const Trajectory& traj, const GevreyWeight& w, double sign) {
  Trajectory out = traj;
  const TorusGrid& grid = traj.grid();
  for (std::size_t n = 0; n < out.nodes(); ++n) {
    const double g = sign * weight_value(w, out.time(n));
    if (g == 0.0) continue;
    for (std::size_t i = 0; i < grid.size(); ++i) out[n][i] *= std::exp(g * grid.norm(i));
  }
  return out;
}

Trajectory weighted_bilinear(const Trajectory& U, const Trajectory& W, const GevreyWeight& w,
                             const SymbolTable& table) {
  check_admissible(w, table);
  if (!U.same_layout(W)) throw ConfigError("bilinear arguments must share grid and time nodes");
  const Trajectory u = apply_weight(U, w, -1.0);
  Trajectory q = &U == &W ? gradient_dot_trajectory(u, u) : gradient_dot_trajectory(u, apply_weight(W, w, -1.0));
  return apply_weight(duhamel_integral(q, table), w, 1.0);
}

BoundConstants weighted_bound_constants(const GevreyWeight& w, const SymbolTable& table) {
  check_admissible(w, table);
  BoundConstants c = bound_constants(table);
  const double kappa = w.kind == WeightKind::linear ? 1.0 : std::exp(fourth_root_constant(w.param, table.m2()));

  double omega_f = 1.0;
  if (table.omega_f_count() > 0) {
    const double T = table.horizon();
    const double g = weight_value(w, T);
    omega_f = 0.0;
    for (const Mode& k : table.omega_f()) {
      const double s = symbol(k, table.grid());
      omega_f = std::max(omega_f, std::exp(g * mode_norm(k) + T * std::max(0.0, -s)));
    }
  }
  c.kernel_sup = std::max(kappa, omega_f);
  c.omega_f_kernel = omega_f;
  c.omega_i_factor = kappa;
  c.m2 = table.m2() / 2.0;
  return c;
}

Trajectory weighted_initial_trajectory(const SpectrumField& V0, const GevreyWeight& w, const SymbolTable& table,
                                       const std::vector<double>& times) {
  std::vector<SpectrumField> nodes;
  nodes.reserve(times.size());
  for (double t : times) nodes.push_back(weighted_semigroup(V0, t, w, table));
  return Trajectory(times, std::move(nodes));
}

SolveResult solve_weighted(const SpectrumField& V0, const GevreyWeight& w, const SolveSpec& spec,
                           const SymbolTable& table, const std::vector<double>& times,
                           const std::optional<Trajectory>& start) {
  if (!(V0.grid() == table.grid())) throw ConfigError("data and symbol table grids differ");
  const BoundConstants constants = weighted_bound_constants(w, table);
  EtaBreakdown eta = compute_eta(spec, constants);
  if (spec.eta > 0.0) {
    if (spec.eta < eta.eta) throw ConfigError("requested eta is below the computed weighted bound");
    eta.eta = spec.eta;
  }

  const Trajectory x0 = weighted_initial_trajectory(V0, w, table, times);
  const BilinearMap bilinear = [&w, &table](const Trajectory& F, const Trajectory& G) {
    return weighted_bilinear(F, G, w, table);
  };
  return solve_mild(x0, bilinear, spec, eta, start);
}

RadiusFit estimate_radius(const SpectrumField& field, double noise_floor) {
  if (!(noise_floor > 0.0)) throw ConfigError("noise floor must be positive");
  const TorusGrid& grid = field.grid();

  struct ShellMax {
    double value = -1.0;
    double radius = 0.0;
  };
  std::map<int, ShellMax> shells;
  for (std::size_t i = 0; i < field.size(); ++i) {
    const double r = grid.norm(i);
    ShellMax& s = shells[static_cast<int>(std::floor(r + 1e-12))];
    const double v = std::abs(field[i]);
    if (v > s.value || (v == s.value && r < s.radius)) s = {v, r};
  }

  std::vector<double> xs, ys;
  RadiusFit fit;
  fit.noise_floor = noise_floor;
  for (const auto& [index, s] : shells) {
    if (!(s.value > noise_floor)) break;
    if (xs.empty()) fit.shell_min = index;
    fit.shell_max = index;
    xs.push_back(s.radius);
    ys.push_back(std::log(s.value));
  }
  fit.shells_used = static_cast<int>(xs.size());
  if (xs.size() < 4) {
    throw InsufficientDataError("insufficient decay data: " + std::to_string(xs.size()) +
                                " shells above the noise floor, 4 needed");
  }

  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  fit.slope = sxy / sxx;
  const double intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (intercept + fit.slope * xs[i]);
    ss += e * e;
  }
  fit.residual = std::sqrt(ss / n);
  fit.rho = std::max(0.0, -fit.slope);
  return fit;
}

void write_radius_csv(std::ostream& out, const std::vector<RadiusRow>& rows) {
  out << "t,rho,g_linear,g_fourthroot,fit_residual\n";
  char buf[256];
  for (const RadiusRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", r.t, r.rho, r.g_linear, r.g_fourthroot,
                  r.fit_residual);
    out << buf;
  }
}

}  // namespace ks
