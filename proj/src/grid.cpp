#include "ks/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ks/errors.hpp"

namespace ks {

double mode_norm(const Mode& k) noexcept {
  return std::sqrt(static_cast<double>(k[0]) * k[0] + static_cast<double>(k[1]) * k[1]);
}

TorusGrid::TorusGrid(std::vector<double> lengths, int cutoff)
    : lengths_(std::move(lengths)), cutoff_(cutoff) {
  if (lengths_.empty() || lengths_.size() > 2) {
    throw ConfigError("torus dimension must be 1 or 2, got " + std::to_string(lengths_.size()));
  }
  for (double L : lengths_) {
    if (!(L > 0.0) || !std::isfinite(L)) throw ConfigError("period lengths must be positive and finite");
  }
  if (cutoff_ < 1) throw ConfigError("mode cutoff must be >= 1");

  for (double L : lengths_) wavenumbers_.push_back(2.0 * std::numbers::pi / L);

  auto lattice = std::make_shared<Lattice>();
  const int N = cutoff_;
  if (dim() == 1) {
    for (int a = -N; a <= N; ++a) {
      if (a != 0) lattice->modes.push_back({a, 0});
    }
  } else {
    for (int a = -N; a <= N; ++a) {
      for (int b = -N; b <= N; ++b) {
        if (a != 0 || b != 0) lattice->modes.push_back({a, b});
      }
    }
  }
  lattice->norms.reserve(lattice->modes.size());
  for (const auto& k : lattice->modes) lattice->norms.push_back(mode_norm(k));
  lattice_ = std::move(lattice);
}

double TorusGrid::normalization() const noexcept {
  double c = 0.0;
  for (double w : wavenumbers_) c = std::max(c, w * w);
  return c;
}

bool TorusGrid::contains(const Mode& k) const noexcept {
  if (k[0] == 0 && k[1] == 0) return false;
  if (std::abs(k[0]) > cutoff_) return false;
  if (dim() == 1) return k[1] == 0;
  return std::abs(k[1]) <= cutoff_;
}

std::optional<std::size_t> TorusGrid::find(const Mode& k) const noexcept {
  if (!contains(k)) return std::nullopt;
  const std::size_t side = 2 * static_cast<std::size_t>(cutoff_) + 1;
  std::size_t flat = static_cast<std::size_t>(k[0] + cutoff_);
  if (dim() == 2) flat = flat * side + static_cast<std::size_t>(k[1] + cutoff_);
  const std::size_t centre = size() / 2;
  return flat < centre ? flat : flat - 1;
}

SpectrumField::SpectrumField(TorusGrid grid) : grid_(std::move(grid)), coeffs_(grid_.size()) {}

SpectrumField::SpectrumField(TorusGrid grid, std::vector<Complex> coeffs)
    : grid_(std::move(grid)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != grid_.size()) throw ConfigError("coefficient count does not match the grid");
}

Complex SpectrumField::at(const Mode& k) const noexcept {
  auto i = grid_.find(k);
  return i ? coeffs_[*i] : Complex{};
}

void SpectrumField::set(const Mode& k, Complex value) {
  auto i = grid_.find(k);
  if (!i) throw ConfigError("mode is zero or outside the lattice");
  coeffs_[*i] = value;
}

bool SpectrumField::is_hermitian(double tol) const noexcept {
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (std::abs(coeffs_[i] - std::conj(coeffs_[grid_.mirror(i)])) > tol) return false;
  }
  return true;
}

void SpectrumField::symmetrize() {
  const std::size_t half = coeffs_.size() / 2;
  for (std::size_t i = 0; i < half; ++i) {
    const std::size_t j = grid_.mirror(i);
    const Complex avg = 0.5 * (coeffs_[i] + std::conj(coeffs_[j]));
    coeffs_[i] = avg;
    coeffs_[j] = std::conj(avg);
  }
}

bool SpectrumField::is_zero() const noexcept {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Complex& c) { return c == Complex{}; });
}

SpectrumField& SpectrumField::operator+=(const SpectrumField& o) {
  if (!(grid_ == o.grid_)) throw ConfigError("grid mismatch");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

SpectrumField& SpectrumField::operator-=(const SpectrumField& o) {
  if (!(grid_ == o.grid_)) throw ConfigError("grid mismatch");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

SpectrumField& SpectrumField::operator*=(Complex s) noexcept {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

namespace {

void check_times(const std::vector<double>& times) {
  if (times.empty()) throw ConfigError("time grid is empty");
  if (times.front() != 0.0) throw ConfigError("time grid must start at t = 0");
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) throw ConfigError("time grid must be strictly increasing");
  }
}

}  // namespace

Trajectory::Trajectory(const TorusGrid& grid, std::vector<double> times)
    : times_(std::move(times)), fields_(times_.size(), SpectrumField(grid)) {
  check_times(times_);
}

Trajectory::Trajectory(std::vector<double> times, std::vector<SpectrumField> fields)
    : times_(std::move(times)), fields_(std::move(fields)) {
  check_times(times_);
  if (fields_.size() != times_.size()) throw ConfigError("one field per time node is required");
  for (const auto& f : fields_) {
    if (!(f.grid() == fields_.front().grid())) throw ConfigError("trajectory fields must share one grid");
  }
}

bool Trajectory::uniform(double rtol) const noexcept {
  if (times_.size() < 3) return true;
  const double h = times_[1] - times_[0];
  for (std::size_t i = 2; i < times_.size(); ++i) {
    if (std::abs((times_[i] - times_[i - 1]) - h) > rtol * h) return false;
  }
  return true;
}

bool Trajectory::same_layout(const Trajectory& o) const noexcept {
  return grid() == o.grid() && times_ == o.times_;
}

Trajectory& Trajectory::operator+=(const Trajectory& o) {
  if (!same_layout(o)) throw ConfigError("trajectory layouts differ");
  for (std::size_t n = 0; n < fields_.size(); ++n) fields_[n] += o.fields_[n];
  return *this;
}

Trajectory& Trajectory::operator-=(const Trajectory& o) {
  if (!same_layout(o)) throw ConfigError("trajectory layouts differ");
  for (std::size_t n = 0; n < fields_.size(); ++n) fields_[n] -= o.fields_[n];
  return *this;
}

Trajectory& Trajectory::operator*=(Complex s) noexcept {
  for (auto& f : fields_) f *= s;
  return *this;
}

std::vector<double> uniform_times(double end_time, int intervals) {
  if (intervals < 0) throw ConfigError("negative interval count");
  if (intervals == 0) return {0.0};
  if (!(end_time > 0.0) || !std::isfinite(end_time)) throw ConfigError("time grid end must be positive and finite");
  std::vector<double> t(static_cast<std::size_t>(intervals) + 1);
  for (int i = 0; i <= intervals; ++i) t[static_cast<std::size_t>(i)] = end_time * i / intervals;
  t.back() = end_time;
  return t;
}

SpectrumField project_zero_mean(const std::map<Mode, Complex>& coefficients, const TorusGrid& grid) {
  SpectrumField out(grid);
  for (const auto& [k, v] : coefficients) {
    if (k[0] == 0 && k[1] == 0) continue;
    auto i = grid.find(k);
    if (!i) throw ConfigError("coefficient outside the lattice");
    out[*i] = v;
  }
  return out;
}

std::map<Mode, Complex> to_coefficient_map(const SpectrumField& field) {
  std::map<Mode, Complex> out;
  for (std::size_t i = 0; i < field.size(); ++i) out.emplace(field.grid().mode(i), field[i]);
  return out;
}

}  // namespace ks
