#include "ks/mild_operator.hpp"

#include <cmath>
#include <vector>

#include "ks/errors.hpp"

namespace ks {

SpectrumField apply_semigroup(const SpectrumField& field, double t, const SymbolTable& table) {
  if (!(t >= 0.0)) throw ConfigError("semigroup time must be nonnegative");
  if (std::isfinite(table.horizon()) && t > table.horizon() * (1.0 + 1e-12)) {
    throw ConfigError("semigroup time exceeds the horizon");
  }
  if (!(field.grid() == table.grid())) throw ConfigError("field and symbol table grids differ");
  SpectrumField out = field;
  if (t == 0.0) return out;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= std::exp(-t * table.sigma(i));
  return out;
}

namespace {

// (1 - e^{-x})/x and (1 - e^{-x}(1 + x))/x^2 by their Taylor series.
void small_argument_moments(double x, double& e1, double& e2) {
  e1 = 0.0;
  e2 = 0.0;
  double term1 = 1.0;   // (-x)^n / (n+1)!
  double power = 1.0;   // (-x)^n
  double fact = 2.0;    // (n+2)!
  for (int n = 0; n < 30; ++n) {
    e1 += term1;
    e2 += power * (n + 1) / fact;
    term1 *= -x / (n + 2);
    power *= -x;
    fact *= n + 3;
  }
}

}  // namespace

ExponentialStep exponential_step(double lambda, double h) noexcept {
  const double x = lambda * h;
  double e1, e2;
  if (std::abs(x) < 0.5) {
    small_argument_moments(x, e1, e2);
  } else {
    const double em = std::exp(-x);
    e1 = -std::expm1(-x) / x;
    e2 = (1.0 - em * (1.0 + x)) / (x * x);
  }
  return {std::exp(-x), h * e2, h * (e1 - e2)};
}

Trajectory duhamel_integral(const Trajectory& source, std::span<const double> rates) {
  const TorusGrid& grid = source.grid();
  if (rates.size() != grid.size()) throw ConfigError("one decay rate per mode is required");

  Trajectory out(grid, source.times());
  std::vector<ExponentialStep> steps(grid.size());
  double cached_h = -1.0;
  for (std::size_t n = 0; n + 1 < source.nodes(); ++n) {
    const double h = source.time(n + 1) - source.time(n);
    if (h != cached_h) {
      for (std::size_t i = 0; i < steps.size(); ++i) steps[i] = exponential_step(rates[i], h);
      cached_h = h;
    }
    const SpectrumField& q0 = source[n];
    const SpectrumField& q1 = source[n + 1];
    const SpectrumField& b0 = out[n];
    SpectrumField& b1 = out[n + 1];
    for (std::size_t i = 0; i < steps.size(); ++i) {
      b1[i] = steps[i].decay * b0[i] + steps[i].w_prev * q0[i] + steps[i].w_next * q1[i];
    }
  }
  return out;
}

Trajectory duhamel_integral(const Trajectory& source, const SymbolTable& table) {
  if (!(source.grid() == table.grid())) throw ConfigError("trajectory and symbol table grids differ");
  return duhamel_integral(source, table.sigma());
}

Trajectory gradient_dot_trajectory(const Trajectory& F, const Trajectory& G) {
  if (!F.same_layout(G)) throw ConfigError("bilinear arguments must share grid and time nodes");
  ConvolutionPlan plan(F.grid());
  std::vector<SpectrumField> q;
  q.reserve(F.nodes());
  const bool square = &F == &G;
  for (std::size_t n = 0; n < F.nodes(); ++n) {
    q.push_back(square ? plan.gradient_dot(F[n], F[n]) : plan.gradient_dot(F[n], G[n]));
  }
  return Trajectory(F.times(), std::move(q));
}

Trajectory duhamel_bilinear(const Trajectory& F, const Trajectory& G, const SymbolTable& table) {
  return duhamel_integral(gradient_dot_trajectory(F, G), table);
}

}  // namespace ks
