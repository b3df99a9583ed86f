#pragma once

// Linear semigroup exp(-t sigma) and the Duhamel bilinear term
//   B(F,G)(t) = int_0^t exp(-(t-s) sigma) P(grad F . grad G)(s) ds
// evaluated on a trajectory's time grid.

#include <span>

#include "ks/convolution.hpp"
#include "ks/grid.hpp"
#include "ks/symbol.hpp"

namespace ks {

/// Multiplies coefficient k by exp(-t sigma(k)). Throws ConfigError for t < 0
/// and, when the horizon is finite, for t beyond it.
SpectrumField apply_semigroup(const SpectrumField& field, double t, const SymbolTable& table);

/// One step of the exponential rule on [t_i, t_i + h] for a mode with decay
/// rate lambda, assuming the source is linear in s over the step:
///   int_0^h exp(-lambda tau) q(t_i + h - tau) dtau = w_prev q_i + w_next q_{i+1}.
struct ExponentialStep {
  double decay;   // exp(-lambda h)
  double w_prev;
  double w_next;
};
ExponentialStep exponential_step(double lambda, double h) noexcept;

/// int_0^{t_n} exp(-(t_n - s) rate_k) q(s,k) ds at every node, with q linear
/// between nodes. rates must hold one entry per stored mode.
Trajectory duhamel_integral(const Trajectory& source, std::span<const double> rates);

/// Duhamel integral with the table's symbol as rate.
Trajectory duhamel_integral(const Trajectory& source, const SymbolTable& table);

/// P(grad F . grad G) at every node.
Trajectory gradient_dot_trajectory(const Trajectory& F, const Trajectory& G);

/// B(F,G) on the common time grid. Throws ConfigError on layout mismatch.
Trajectory duhamel_bilinear(const Trajectory& F, const Trajectory& G, const SymbolTable& table);

}  // namespace ks
