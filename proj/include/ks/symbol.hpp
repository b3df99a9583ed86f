#pragma once

// Fourier symbol of the linear part (Delta^2 + Delta), the damped/undamped
// partition of the lattice, and the constants the existence bounds are
// built from.

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "ks/grid.hpp"

namespace ks {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// (sum_j (2pi/L_j)^2 k_j^2)^2 - sum_j (2pi/L_j)^2 k_j^2.
/// Throws ConfigError for k = 0 or a dimension mismatch.
double symbol(std::span<const int> k, std::span<const double> lengths);
double symbol(const Mode& k, const TorusGrid& grid);

class SymbolTable {
 public:
  const TorusGrid& grid() const noexcept { return grid_; }

  /// sigma(k) for every stored mode, in grid order.
  std::span<const double> sigma() const noexcept { return sigma_; }
  double sigma(std::size_t i) const { return sigma_[i]; }
  /// Stored mode lies in the finite set where sigma <= 0.
  bool in_omega_f(std::size_t i) const { return omega_f_flag_[i] != 0; }

  /// Every k in Z^n \ {0} with sigma(k) <= 0, not only those inside the cutoff.
  const std::vector<Mode>& omega_f() const noexcept { return omega_f_; }
  std::size_t omega_f_count() const noexcept { return omega_f_.size(); }

  /// sup_{t in [0,T]} sup_k exp(-t sigma(k)).
  double m1() const noexcept { return m1_; }
  /// Largest c with sigma(k) >= c |k|^4 on the damped modes.
  double m2() const noexcept { return m2_; }
  /// max |k| over the undamped modes, 0 when there are none.
  double m3() const noexcept { return m3_; }
  double min_sigma() const noexcept { return min_sigma_; }

  bool case_a() const noexcept { return case_a_; }
  double horizon() const noexcept { return horizon_; }

 private:
  friend SymbolTable build_symbol_table(const TorusGrid& grid, double horizon);
  explicit SymbolTable(TorusGrid grid) : grid_(std::move(grid)) {}

  TorusGrid grid_;
  std::vector<double> sigma_;
  std::vector<unsigned char> omega_f_flag_;
  std::vector<Mode> omega_f_;
  double m1_ = 1.0;
  double m2_ = 0.0;
  double m3_ = 0.0;
  double min_sigma_ = 0.0;
  bool case_a_ = true;
  double horizon_ = kInfinity;
};

/// Throws ConfigError when some L_i >= 2pi and the horizon is infinite, or
/// when the horizon is not positive.
SymbolTable build_symbol_table(const TorusGrid& grid, double horizon = kInfinity);

/// Dirichlet beta function, s > 0.
double dirichlet_beta(double s);

/// sum over Z^n \ {0} of |k|^{-s}; requires s > n.
double lattice_power_sum(int dim, double s);

/// sum over the damped modes (the whole infinite lattice minus Omega_F) of
/// |k|^exponent; requires exponent < -n.
double omega_i_power_sum(const SymbolTable& table, double exponent);

/// sum over Omega_F of |k|^exponent.
double omega_f_power_sum(const SymbolTable& table, double exponent);

}  // namespace ks
