#pragma once

// Named test fields and seeded random fields/trajectories.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ks/grid.hpp"

namespace ks {

using Rng = std::mt19937_64;

/// eps * 2 cos(2pi x_1 / L_1): coefficient eps at k = +-e_1.
SpectrumField cos1_fixture(const TorusGrid& grid, double eps = 1.0);

/// f(k) = 1/|k|^{n-1} at every stored mode (both signs). Its PM^{n-1-p}
/// norm is 1 at every cutoff while the Y^{-1} sums diverge.
SpectrumField pm_boundary_fixture(const TorusGrid& grid);

/// f(k) = |k|^{3/4} at k = (2^{4l}, 0), l = 1, 2, ... inside the cutoff,
/// positive axis only. Y^{-1} partial sums are sum_l 2^{-l} <= 1; the
/// PM^{-1/2} values 2^{l_max} grow with the cutoff.
SpectrumField y_lacunary_fixture(const TorusGrid& grid);

/// cos1, pm-boundary or y-lacunary; ConfigError otherwise.
SpectrumField named_fixture(const std::string& name, const TorusGrid& grid);

/// Hermitian field with |f(k)| = |k|^{-alpha} U(0.5, 1) and uniform phases.
SpectrumField random_field(const TorusGrid& grid, double alpha, Rng& rng);

/// Hermitian trajectory f(t,k) = c_k (1 + A_k sin(w_k t + p_k)) exp(-r_k t)
/// with c_k drawn as in random_field, A_k in [0, 0.5), w_k in [0, 2pi),
/// r_k in [0, 2).
Trajectory random_trajectory(const TorusGrid& grid, const std::vector<double>& times, double alpha, Rng& rng);

}  // namespace ks
