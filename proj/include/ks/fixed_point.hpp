#pragma once

// Picard iteration x <- x0 + Btilde(x, x) for the mild equation
//   psi = S psi0 - (1/2) B(psi, psi)
// in the three space pairs the existence theory uses, with the bilinear
// bound eta assembled from the symbol-table constants.

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "ks/errors.hpp"
#include "ks/grid.hpp"
#include "ks/symbol.hpp"

namespace ks {

enum class SpacePair {
  wiener,            // Y^{-1} data, solution in calY^{-1} ∩ calX^3
  pseudomeasure_1d,  // PM^{-p} data, calPM^{-p} ∩ calX^{2+p}, n = 1
  pseudomeasure_2d,  // PM^{1-p} data, calPM^{1-p} ∩ calX^{2+p}, n = 2
};

std::string to_string(SpacePair pair);
SpacePair space_pair_from_string(const std::string& s);
/// "Y" selects wiener; "PM" picks the pseudomeasure pair for the dimension.
SpacePair space_pair_for(const std::string& s, int dim);

struct PairNorms {
  double low = 0.0;
  double high = 0.0;
  double total() const noexcept { return low + high; }
};

/// Data norm of the pair: Y^{-1}, PM^{-p} or PM^{1-p}.
double data_norm(const SpectrumField& field, SpacePair pair, double p);
PairNorms pair_norms(const Trajectory& traj, SpacePair pair, double p);

/// Constants entering the bilinear bounds. For the plain semigroup these are
/// M1, M2, M3 of the table; the exponentially weighted system substitutes its
/// own kernel bounds.
struct BoundConstants {
  int dim = 1;
  double kernel_sup = 1.0;       // sup of the kernel over all modes (M1)
  double omega_f_kernel = 1.0;   // kernel bound on the undamped modes
  double omega_i_factor = 1.0;   // factor in front of the 1/M2 terms
  double m2 = 1.0;
  double m3 = 0.0;
  std::size_t omega_f_count = 0;
  double horizon = kInfinity;
  double normalization = 1.0;    // max_i 4pi^2/L_i^2
  const SymbolTable* table = nullptr;

  /// T-proportional terms vanish when there are no undamped modes.
  double finite_mode_time() const noexcept { return omega_f_count == 0 ? 0.0 : horizon; }
};

BoundConstants bound_constants(const SymbolTable& table);

/// Constant c with ||B(F,G)||_target <= c (|F|_low + |F|_high)(|G|_low + |G|_high),
/// in the normalized form (physical factors 4pi^2/L_i^2 set to 1).
struct BilinearConstants {
  double low = 0.0;   // bound into the low (sup-in-time) norm
  double high = 0.0;  // bound into the calX norm
};

/// Which constant to use for the calX^{2+p} bound in one dimension.
enum class PseudomeasureHighConstant { inverse_m2, times_m2 };

BilinearConstants bilinear_constants(SpacePair pair, double p, const BoundConstants& c,
                                     PseudomeasureHighConstant variant = PseudomeasureHighConstant::inverse_m2);

struct SolveSpec {
  SpacePair pair = SpacePair::wiener;
  double p = 0.25;
  /// Bound on the bilinear map; 0 means "use the computed value".
  double eta = 0.0;
  double tol = 1e-10;
  int max_iter = 100;
};

struct EtaBreakdown {
  BilinearConstants normalized;
  double normalization = 1.0;
  double eta = 0.0;  // normalization * (low + high) / 2

  nlohmann::json to_json() const;
};

/// Throws ConfigError when p is outside (0, 1/2) for a pseudomeasure pair or
/// the pair does not match the grid dimension.
EtaBreakdown compute_eta(const SolveSpec& spec, const BoundConstants& constants);
EtaBreakdown compute_eta(const SolveSpec& spec, const SymbolTable& table);

/// 4 eta |x0| < 1, strictly.
bool smallness_gate(double x0_norm, double eta) noexcept;

struct GateRecord {
  double x0_norm = 0.0;
  double eta = 0.0;
  double product = 0.0;
  bool passed = false;

  nlohmann::json to_json() const;
};

/// Outcome of the generic driver.
template <class X>
struct PicardOutcome {
  X solution;
  std::vector<double> iterate_norms;  // norm of every iterate, starting guess first
  std::vector<double> residuals;      // |x_m - step(x_m)| for every iterate
  int iterations = 0;
  double residual() const { return residuals.back(); }
};

/// Iterates x <- step(x) from `start` until |step(x) - x| <= tol, returning
/// the last x together with its residual. Throws ConvergenceError with the
/// residual history after max_iter updates.
template <class X, class Step, class Distance, class Norm>
PicardOutcome<X> picard_iterate(X start, Step&& step, Distance&& distance, Norm&& norm, double tol,
                                int max_iter) {
  PicardOutcome<X> out{std::move(start), {}, {}, 0};
  for (;;) {
    out.iterate_norms.push_back(norm(out.solution));
    X next = step(out.solution);
    const double r = distance(next, out.solution);
    out.residuals.push_back(r);
    if (!std::isfinite(r)) {
      throw ConvergenceError("Picard iteration diverged", out.residuals);
    }
    if (r <= tol) return out;
    if (out.iterations >= max_iter) {
      throw ConvergenceError("Picard iteration did not reach the tolerance in " + std::to_string(max_iter) +
                                 " iterations",
                             out.residuals);
    }
    out.solution = std::move(next);
    ++out.iterations;
  }
}

struct SolveResult {
  Trajectory solution;
  std::vector<double> iterate_norms;
  std::vector<double> residuals;
  double residual = 0.0;
  int iterations = 0;
  GateRecord gate;
  EtaBreakdown constants;
  PairNorms x0_norms;
  PairNorms solution_norms;

  nlohmann::json to_json() const;
};

/// Node m holds exp(-t_m sigma) phi0.
Trajectory build_initial_trajectory(const SpectrumField& phi0, const SymbolTable& table,
                                    const std::vector<double>& times);

using BilinearMap = std::function<Trajectory(const Trajectory&, const Trajectory&)>;

/// Solves x = x0 - (1/2) bilinear(x, x) with the given eta. Throws GateError
/// when 4 eta |x0| >= 1 in the pair norm.
SolveResult solve_mild(const Trajectory& x0, const BilinearMap& bilinear, const SolveSpec& spec,
                       const EtaBreakdown& eta, const std::optional<Trajectory>& start = std::nullopt);

/// Unweighted equation with B = duhamel_bilinear. spec.eta, when positive,
/// must be at least the computed bound.
SolveResult picard_solve(const Trajectory& x0, const SolveSpec& spec, const SymbolTable& table,
                         const std::optional<Trajectory>& start = std::nullopt);

}  // namespace ks
