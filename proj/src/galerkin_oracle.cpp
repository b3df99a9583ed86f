#include "ks/galerkin_oracle.hpp"

#include <cmath>
#include <string>

#include "ks/convolution.hpp"
#include "ks/errors.hpp"

namespace ks {

namespace {

class Stepper {
 public:
  Stepper(const SymbolTable& table, bool nonlinear)
      : table_(table), plan_(table.grid()), nonlinear_(nonlinear) {}

  void set_step(double h) {
    if (h == h_) return;
    h_ = h;
    const std::size_t n = table_.grid().size();
    full_.resize(n);
    half_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      full_[i] = std::exp(-h * table_.sigma(i));
      half_[i] = std::exp(-0.5 * h * table_.sigma(i));
    }
  }

  // Lawson RK4 in the variable exp(t sigma) psi.
  void step(SpectrumField& u) {
    const std::size_t n = u.size();
    const double h = h_;
    if (!nonlinear_) {
      for (std::size_t i = 0; i < n; ++i) u[i] *= full_[i];
      return;
    }
    const SpectrumField k1 = rhs(u);
    SpectrumField v = u;
    for (std::size_t i = 0; i < n; ++i) v[i] = half_[i] * (u[i] + 0.5 * h * k1[i]);
    const SpectrumField k2 = rhs(v);
    for (std::size_t i = 0; i < n; ++i) v[i] = half_[i] * u[i] + 0.5 * h * k2[i];
    const SpectrumField k3 = rhs(v);
    for (std::size_t i = 0; i < n; ++i) v[i] = full_[i] * u[i] + h * half_[i] * k3[i];
    const SpectrumField k4 = rhs(v);
    for (std::size_t i = 0; i < n; ++i) {
      u[i] = full_[i] * u[i] + h / 6.0 * (full_[i] * k1[i] + 2.0 * half_[i] * (k2[i] + k3[i]) + k4[i]);
    }
  }

 private:
  SpectrumField rhs(const SpectrumField& u) {
    SpectrumField q = plan_.gradient_dot(u, u);
    q *= Complex(-0.5);
    return q;
  }

  const SymbolTable& table_;
  ConvolutionPlan plan_;
  bool nonlinear_;
  double h_ = -1.0;
  std::vector<double> full_, half_;
};

bool finite(const SpectrumField& u) {
  for (const Complex& c : u.coeffs()) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  }
  return true;
}

}  // namespace

Trajectory integrate(const SpectrumField& psi0, const OracleConfig& cfg, const SymbolTable& table) {
  if (!(cfg.dt > 0.0)) throw ConfigError("oracle dt must be positive");
  if (!(psi0.grid() == table.grid())) throw ConfigError("data and symbol table grids differ");
  std::vector<double> times = cfg.output_times;
  if (times.empty()) {
    if (!(cfg.end_time > 0.0)) throw ConfigError("oracle end time must be positive");
    times = {0.0, cfg.end_time};
  }
  if (std::isfinite(table.horizon()) && times.back() > table.horizon() * (1.0 + 1e-12)) {
    throw ConfigError("oracle end time exceeds the horizon");
  }
  Trajectory out(table.grid(), times);  // validates the time grid

  Stepper stepper(table, cfg.nonlinear);
  SpectrumField u = psi0;
  out[0] = u;
  double t = 0.0;
  for (std::size_t n = 1; n < times.size(); ++n) {
    const double span = times[n] - times[n - 1];
    const auto substeps = static_cast<long>(std::ceil(span / cfg.dt * (1.0 - 1e-12)));
    stepper.set_step(span / static_cast<double>(substeps));
    for (long s = 0; s < substeps; ++s) {
      stepper.step(u);
      if (!finite(u)) {
        throw InstabilityError("oracle state became non-finite after t = " + std::to_string(t), t);
      }
      t = times[n - 1] + span * static_cast<double>(s + 1) / static_cast<double>(substeps);
    }
    t = times[n];
    out[n] = u;
  }
  return out;
}

}  // namespace ks
