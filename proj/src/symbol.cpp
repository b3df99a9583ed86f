#include "ks/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ks/errors.hpp"

namespace ks {

double symbol(std::span<const int> k, std::span<const double> lengths) {
  if (k.size() != lengths.size()) throw ConfigError("mode and length dimensions differ");
  double xi2 = 0.0;
  bool zero = true;
  for (std::size_t j = 0; j < k.size(); ++j) {
    const double w = 2.0 * std::numbers::pi / lengths[j];
    xi2 += w * w * static_cast<double>(k[j]) * k[j];
    zero = zero && k[j] == 0;
  }
  if (zero) throw ConfigError("symbol requested at k = 0");
  return xi2 * xi2 - xi2;
}

double symbol(const Mode& k, const TorusGrid& grid) {
  return symbol(std::span<const int>(k.data(), static_cast<std::size_t>(grid.dim())), grid.lengths());
}

namespace {

// Enumerates the integer points of the square shell max(|a|,|b|) == r.
template <class Fn>
void for_each_in_shell(int dim, int r, Fn&& fn) {
  if (dim == 1) {
    fn(Mode{r, 0});
    fn(Mode{-r, 0});
    return;
  }
  for (int a = -r; a <= r; ++a) {
    fn(Mode{a, r});
    fn(Mode{a, -r});
  }
  for (int b = -r + 1; b <= r - 1; ++b) {
    fn(Mode{r, b});
    fn(Mode{-r, b});
  }
}

// sigma(k)/|k|^4 = (sum c_j k_j^2)^2/|k|^4 - (sum c_j k_j^2)/|k|^4. Along any
// ray the second term shrinks like 1/|k|^2 while the first is constant, so the
// ratio is bounded below by c_min^2 - c_max/|k|^2 and the search over the
// infinite lattice can stop once that bound passes the best value found.
double coercivity_constant(const TorusGrid& grid) {
  const int n = grid.dim();
  double c_min = kInfinity, c_max = 0.0;
  for (int j = 0; j < n; ++j) {
    const double c = grid.wavenumber(j) * grid.wavenumber(j);
    c_min = std::min(c_min, c);
    c_max = std::max(c_max, c);
  }
  double best = kInfinity;
  for (int r = 1;; ++r) {
    if (best < kInfinity && c_min * c_min - c_max / (static_cast<double>(r) * r) >= best) break;
    for_each_in_shell(n, r, [&](const Mode& k) {
      const double s = symbol(k, grid);
      if (s <= 0.0) return;
      const double k2 = static_cast<double>(k[0]) * k[0] + static_cast<double>(k[1]) * k[1];
      best = std::min(best, s / (k2 * k2));
    });
  }
  return best;
}

std::vector<Mode> undamped_modes(const TorusGrid& grid) {
  std::vector<Mode> out;
  int box[2] = {0, 0};
  for (int j = 0; j < grid.dim(); ++j) {
    box[j] = static_cast<int>(std::floor(1.0 / grid.wavenumber(j))) + 1;
  }
  for (int a = -box[0]; a <= box[0]; ++a) {
    for (int b = -box[1]; b <= box[1]; ++b) {
      if (a == 0 && b == 0) continue;
      if (symbol(Mode{a, b}, grid) <= 0.0) out.push_back({a, b});
    }
  }
  return out;
}

}  // namespace

SymbolTable build_symbol_table(const TorusGrid& grid, double horizon) {
  if (!(horizon > 0.0)) throw ConfigError("time horizon must be positive");

  SymbolTable table(grid);
  table.horizon_ = horizon;
  table.case_a_ = std::all_of(grid.lengths().begin(), grid.lengths().end(),
                              [](double L) { return L < 2.0 * std::numbers::pi; });
  if (!table.case_a_ && !std::isfinite(horizon)) {
    throw ConfigError("a period >= 2*pi has undamped modes and needs a finite time horizon");
  }

  table.sigma_.resize(grid.size());
  table.omega_f_flag_.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    table.sigma_[i] = symbol(grid.mode(i), grid);
    table.omega_f_flag_[i] = table.sigma_[i] <= 0.0 ? 1 : 0;
  }

  table.omega_f_ = undamped_modes(grid);
  table.m2_ = coercivity_constant(grid);

  double min_sigma = kInfinity;
  double m3 = 0.0;
  for (const auto& k : table.omega_f_) {
    min_sigma = std::min(min_sigma, symbol(k, grid));
    m3 = std::max(m3, mode_norm(k));
  }
  if (table.omega_f_.empty()) {
    for (double s : table.sigma_) min_sigma = std::min(min_sigma, s);
  }
  table.min_sigma_ = min_sigma;
  table.m3_ = m3;
  table.m1_ = (table.case_a_ || min_sigma >= 0.0) ? 1.0 : std::exp(-horizon * min_sigma);
  return table;
}

double dirichlet_beta(double s) {
  if (!(s > 0.0)) throw ConfigError("dirichlet_beta needs s > 0");
  // Cohen, Rodriguez Villegas and Zagier acceleration of the alternating series.
  constexpr int n = 40;
  double d = std::pow(3.0 + std::sqrt(8.0), n);
  d = 0.5 * (d + 1.0 / d);
  double b = -1.0, c = -d, sum = 0.0;
  for (int k = 0; k < n; ++k) {
    c = b - c;
    sum += c * std::pow(2.0 * k + 1.0, -s);
    b = (static_cast<double>(k) + n) * (static_cast<double>(k) - n) * b / ((k + 0.5) * (k + 1.0));
  }
  return sum / d;
}

double lattice_power_sum(int dim, double s) {
  if (dim == 1) {
    if (!(s > 1.0)) throw ConfigError("lattice sum diverges: need s > 1 in one dimension");
    return 2.0 * std::riemann_zeta(s);
  }
  if (dim == 2) {
    if (!(s > 2.0)) throw ConfigError("lattice sum diverges: need s > 2 in two dimensions");
    // sum_{(a,b) != 0} (a^2 + b^2)^{-u} = 4 zeta(u) beta(u).
    const double u = 0.5 * s;
    return 4.0 * std::riemann_zeta(u) * dirichlet_beta(u);
  }
  throw ConfigError("lattice sums are provided for dimensions 1 and 2");
}

double omega_f_power_sum(const SymbolTable& table, double exponent) {
  double sum = 0.0;
  for (const auto& k : table.omega_f()) sum += std::pow(mode_norm(k), exponent);
  return sum;
}

double omega_i_power_sum(const SymbolTable& table, double exponent) {
  return lattice_power_sum(table.grid().dim(), -exponent) - omega_f_power_sum(table, exponent);
}

}  // namespace ks
