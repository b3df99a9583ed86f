#pragma once

// Frequency lattice and coefficient containers.
//
// A TorusGrid keeps the modes k with |k_j| <= N componentwise, k != 0, in
// lexicographic order. Fields store one complex coefficient per kept mode;
// the zero mode is never stored, so every container is mean-free.

#include <array>
#include <complex>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace ks {

using Complex = std::complex<double>;

/// Integer lattice vector. One-dimensional grids leave the second slot at 0.
using Mode = std::array<int, 2>;

double mode_norm(const Mode& k) noexcept;

class TorusGrid {
 public:
  /// Throws ConfigError unless 1 <= lengths.size() <= 2, all lengths > 0 and
  /// cutoff >= 1.
  TorusGrid(std::vector<double> lengths, int cutoff);

  int dim() const noexcept { return static_cast<int>(lengths_.size()); }
  const std::vector<double>& lengths() const noexcept { return lengths_; }
  int cutoff() const noexcept { return cutoff_; }

  std::size_t size() const noexcept { return lattice_->modes.size(); }
  const Mode& mode(std::size_t i) const { return lattice_->modes[i]; }
  const std::vector<Mode>& modes() const noexcept { return lattice_->modes; }
  /// Euclidean norm of the integer vector.
  double norm(std::size_t i) const { return lattice_->norms[i]; }
  std::span<const double> norms() const noexcept { return lattice_->norms; }

  /// 2*pi/L_axis.
  double wavenumber(int axis) const { return wavenumbers_[static_cast<std::size_t>(axis)]; }
  /// max_i 4*pi^2/L_i^2, the factor the normalized bilinear constants omit.
  double normalization() const noexcept;

  bool contains(const Mode& k) const noexcept;
  std::optional<std::size_t> find(const Mode& k) const noexcept;
  /// Index of -k (always present when k is).
  std::size_t mirror(std::size_t i) const noexcept { return size() - 1 - i; }

  friend bool operator==(const TorusGrid& a, const TorusGrid& b) noexcept {
    return a.cutoff_ == b.cutoff_ && a.lengths_ == b.lengths_;
  }

 private:
  struct Lattice {
    std::vector<Mode> modes;
    std::vector<double> norms;
  };

  std::vector<double> lengths_;
  std::vector<double> wavenumbers_;
  int cutoff_;
  std::shared_ptr<const Lattice> lattice_;
};

class SpectrumField {
 public:
  explicit SpectrumField(TorusGrid grid);
  SpectrumField(TorusGrid grid, std::vector<Complex> coeffs);

  const TorusGrid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return coeffs_.size(); }

  Complex& operator[](std::size_t i) { return coeffs_[i]; }
  const Complex& operator[](std::size_t i) const { return coeffs_[i]; }
  std::span<Complex> coeffs() noexcept { return coeffs_; }
  std::span<const Complex> coeffs() const noexcept { return coeffs_; }

  /// Coefficient at k; zero for k = 0 and for modes outside the cutoff.
  Complex at(const Mode& k) const noexcept;
  /// Throws ConfigError for k = 0 or k outside the lattice.
  void set(const Mode& k, Complex value);

  /// coeff(-k) == conj(coeff(k)) within an absolute tolerance.
  bool is_hermitian(double tol = 0.0) const noexcept;
  /// Replaces coeff(k) by (coeff(k) + conj(coeff(-k)))/2.
  void symmetrize();
  bool is_zero() const noexcept;

  SpectrumField& operator+=(const SpectrumField& o);
  SpectrumField& operator-=(const SpectrumField& o);
  SpectrumField& operator*=(Complex s) noexcept;

  friend SpectrumField operator+(SpectrumField a, const SpectrumField& b) { return a += b; }
  friend SpectrumField operator-(SpectrumField a, const SpectrumField& b) { return a -= b; }
  friend SpectrumField operator*(Complex s, SpectrumField a) { return a *= s; }
  friend bool operator==(const SpectrumField& a, const SpectrumField& b) noexcept {
    return a.grid_ == b.grid_ && a.coeffs_ == b.coeffs_;
  }

 private:
  TorusGrid grid_;
  std::vector<Complex> coeffs_;
};

/// Time grid plus one field per node, t_0 = 0 < t_1 < ... < t_M.
class Trajectory {
 public:
  /// Zero fields on every node.
  Trajectory(const TorusGrid& grid, std::vector<double> times);
  Trajectory(std::vector<double> times, std::vector<SpectrumField> fields);

  const TorusGrid& grid() const noexcept { return fields_.front().grid(); }
  const std::vector<double>& times() const noexcept { return times_; }
  double time(std::size_t node) const { return times_[node]; }
  double end_time() const noexcept { return times_.back(); }
  std::size_t nodes() const noexcept { return times_.size(); }

  SpectrumField& operator[](std::size_t node) { return fields_[node]; }
  const SpectrumField& operator[](std::size_t node) const { return fields_[node]; }
  const SpectrumField& back() const noexcept { return fields_.back(); }

  bool uniform(double rtol = 1e-9) const noexcept;
  bool same_layout(const Trajectory& o) const noexcept;

  Trajectory& operator+=(const Trajectory& o);
  Trajectory& operator-=(const Trajectory& o);
  Trajectory& operator*=(Complex s) noexcept;

  friend Trajectory operator+(Trajectory a, const Trajectory& b) { return a += b; }
  friend Trajectory operator-(Trajectory a, const Trajectory& b) { return a -= b; }
  friend Trajectory operator*(Complex s, Trajectory a) { return a *= s; }

 private:
  std::vector<double> times_;
  std::vector<SpectrumField> fields_;
};

/// {0, T/M, ..., T}.
std::vector<double> uniform_times(double end_time, int intervals);

/// Drops the k = 0 entry and copies the rest onto the grid. Keys outside the
/// lattice throw ConfigError.
SpectrumField project_zero_mean(const std::map<Mode, Complex>& coefficients, const TorusGrid& grid);

/// Every stored mode, including zero coefficients.
std::map<Mode, Complex> to_coefficient_map(const SpectrumField& field);

}  // namespace ks
