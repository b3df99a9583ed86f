#pragma once

// Exponentially weighted system for V = exp(g(t)|k|) psi and decay-rate
// estimation of computed spectra.
//
// |k| is the lattice Euclidean norm throughout, so every radius here is in
// lattice units (multiply by L/2pi for physical units on a square torus).

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ks/fixed_point.hpp"
#include "ks/grid.hpp"
#include "ks/symbol.hpp"

namespace ks {

enum class WeightKind { fourth_root, linear };

std::string to_string(WeightKind kind);
WeightKind weight_kind_from_string(const std::string& s);

struct GevreyWeight {
  WeightKind kind = WeightKind::linear;
  double param = 0.0;  // a for the fourth root, b for the linear weight
};

/// a t^{1/4} or b t.
double weight_value(const GevreyWeight& w, double t);

/// max{ sup_z (a z - (m2/2) z^4), 1 }, attained at z* = (a / (2 m2))^{1/3}.
double fourth_root_constant(double a, double m2);

/// Throws ConfigError for a negative parameter, or a linear weight with
/// b >= M2/2.
void check_admissible(const GevreyWeight& w, const SymbolTable& table);

/// Multiplies coefficient k by exp(g(t)|k| - t sigma(k)).
SpectrumField weighted_semigroup(const SpectrumField& V0, double t, const GevreyWeight& w,
                                 const SymbolTable& table);

/// Weighted Duhamel term: U, W are unweighted by exp(-g(s)|k|) at every node,
/// combined by gradient_dot, integrated with the plain exponential rule, and
/// reweighted by exp(g(t)|k|).
Trajectory weighted_bilinear(const Trajectory& U, const Trajectory& W, const GevreyWeight& w,
                             const SymbolTable& table);

/// exp(sign * g(t_m)|k|) applied at every node.
Trajectory apply_weight(const Trajectory& traj, const GevreyWeight& w, double sign);

/// Kernel bounds of the weighted system: exp(C(a)) (fourth root) or 1
/// (linear) on the damped modes, with M2 replaced by M2/2, and
/// max_{Omega_F} exp(g(T)|k| + T max(0, -sigma)) on the undamped ones.
BoundConstants weighted_bound_constants(const GevreyWeight& w, const SymbolTable& table);

/// exp(g(t)|k| - t sigma(k)) V0 at every node: the weighted free evolution.
Trajectory weighted_initial_trajectory(const SpectrumField& V0, const GevreyWeight& w, const SymbolTable& table,
                                       const std::vector<double>& times);

/// Picard solve of V = L V0 - (1/2) calB(V, V) on the given time grid.
SolveResult solve_weighted(const SpectrumField& V0, const GevreyWeight& w, const SolveSpec& spec,
                           const SymbolTable& table, const std::vector<double>& times,
                           const std::optional<Trajectory>& start = std::nullopt);

struct RadiusFit {
  double time = 0.0;
  double rho = 0.0;             // fitted exponential decay rate, clamped at 0
  double slope = 0.0;           // raw least-squares slope of log|psi| vs |k|
  int shell_min = 0;            // fit window, shell index floor(|k|)
  int shell_max = 0;
  int shells_used = 0;
  double residual = 0.0;        // rms deviation of the fit in log space
  double noise_floor = 0.0;
};

inline constexpr double kDefaultNoiseFloor = 1e-14;

/// Least-squares fit of log(max |psi(k)|) over each integer shell against the
/// |k| attaining that maximum. Uses the contiguous run of shells, starting at
/// the first nonempty one, whose maxima exceed the noise floor; throws
/// InsufficientDataError when fewer than 4 qualify.
RadiusFit estimate_radius(const SpectrumField& field, double noise_floor = kDefaultNoiseFloor);

struct RadiusRow {
  double t = 0.0;
  double rho = 0.0;
  double g_linear = 0.0;
  double g_fourthroot = 0.0;
  double fit_residual = 0.0;
};

/// Header "t,rho,g_linear,g_fourthroot,fit_residual", 17 significant digits.
void write_radius_csv(std::ostream& out, const std::vector<RadiusRow>& rows);

}  // namespace ks
