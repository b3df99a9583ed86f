#pragma once

// Reference solver: the truncated Fourier-Galerkin system
//   d/dt psi_k = -sigma(k) psi_k - (1/2) [P |grad psi|^2]_k
// integrated with integrating-factor RK4 (the linear part is exact). Shares
// only gradient_dot with the mild solver.

#include <vector>

#include "ks/grid.hpp"
#include "ks/symbol.hpp"

namespace ks {

struct OracleConfig {
  double end_time = 1.0;
  double dt = 1e-4;            // largest substep; output intervals are split evenly
  bool nonlinear = true;
  std::vector<double> output_times;  // empty: {0, end_time}
};

/// Samples the Galerkin solution at cfg.output_times (t_0 must be 0). Throws
/// ConfigError for dt <= 0 or bad times and InstabilityError when the state
/// stops being finite.
Trajectory integrate(const SpectrumField& psi0, const OracleConfig& cfg, const SymbolTable& table);

}  // namespace ks
