#include "ks/fixtures.hpp"

#include <cmath>
#include <numbers>

#include "ks/errors.hpp"

namespace ks {

SpectrumField cos1_fixture(const TorusGrid& grid, double eps) {
  SpectrumField f(grid);
  f.set({1, 0}, eps);
  f.set({-1, 0}, eps);
  return f;
}

SpectrumField pm_boundary_fixture(const TorusGrid& grid) {
  SpectrumField f(grid);
  const double power = grid.dim() - 1.0;
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = 1.0 / std::pow(grid.norm(i), power);
  return f;
}

SpectrumField y_lacunary_fixture(const TorusGrid& grid) {
  SpectrumField f(grid);
  for (long k = 16; k <= grid.cutoff(); k *= 16) f.set({static_cast<int>(k), 0}, std::pow(double(k), 0.75));
  return f;
}

SpectrumField named_fixture(const std::string& name, const TorusGrid& grid) {
  if (name == "cos1") return cos1_fixture(grid);
  if (name == "pm-boundary") return pm_boundary_fixture(grid);
  if (name == "y-lacunary") return y_lacunary_fixture(grid);
  throw ConfigError("unknown fixture '" + name + "' (expected cos1, pm-boundary or y-lacunary)");
}

SpectrumField random_field(const TorusGrid& grid, double alpha, Rng& rng) {
  std::uniform_real_distribution<double> mag(0.5, 1.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  SpectrumField f(grid);
  // Modes are stored lexicographically, so the first half holds one of each
  // +-k pair.
  for (std::size_t i = 0; i < f.size() / 2; ++i) {
    const double r = std::pow(grid.norm(i), -alpha) * mag(rng);
    const Complex c = std::polar(r, phase(rng));
    f[i] = c;
    f[grid.mirror(i)] = std::conj(c);
  }
  return f;
}

Trajectory random_trajectory(const TorusGrid& grid, const std::vector<double>& times, double alpha, Rng& rng) {
  const SpectrumField base = random_field(grid, alpha, rng);
  std::uniform_real_distribution<double> amp(0.0, 0.5);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> rate(0.0, 2.0);
  const std::size_t half = grid.size() / 2;
  std::vector<double> A(half), w(half), p(half), r(half);
  for (std::size_t i = 0; i < half; ++i) {
    A[i] = amp(rng);
    w[i] = angle(rng);
    p[i] = angle(rng);
    r[i] = rate(rng);
  }
  Trajectory out(grid, times);
  for (std::size_t n = 0; n < out.nodes(); ++n) {
    const double t = out.time(n);
    for (std::size_t i = 0; i < half; ++i) {
      const Complex c = base[i] * ((1.0 + A[i] * std::sin(w[i] * t + p[i])) * std::exp(-r[i] * t));
      out[n][i] = c;
      out[n][grid.mirror(i)] = std::conj(c);
    }
  }
  return out;
}

}  // namespace ks
