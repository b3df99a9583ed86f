// One PASS/FAIL line per acceptance criterion; exit status 0 iff all pass.
// Usage: ks_acceptance [criterion numbers...]

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ks/errors.hpp"
#include "ks/estimate_lab.hpp"
#include "ks/fixed_point.hpp"
#include "ks/fixtures.hpp"
#include "ks/galerkin_oracle.hpp"
#include "ks/gevrey.hpp"
#include "ks/mild_operator.hpp"
#include "ks/norms.hpp"

using namespace ks;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  // Records a named check; the first failure flips the outcome.
  void check(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      detail << " [violated: " << what << "]";
    }
  }
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

double relative_l2(const SpectrumField& a, const SpectrumField& ref) {
  double diff = 0.0, norm = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    diff += std::norm(a[i] - ref[i]);
    norm += std::norm(ref[i]);
  }
  return std::sqrt(diff / norm);
}

// The desk fixture shared by criteria 1, 2 and 10: 1D, L = pi, cos1 data with
// |phi0|_{Y^-1} = 0.9/(4 eta), T = 1 on 200 intervals.
struct DeskRun {
  SymbolTable table;
  SpectrumField phi0;
  double eta;
  SolveResult result;
};

DeskRun desk_run(int N) {
  SymbolTable table = build_symbol_table(TorusGrid({pi}, N));
  const SolveSpec spec;
  const double eta = compute_eta(spec, table).eta;
  SpectrumField phi0 = cos1_fixture(table.grid());
  phi0 *= Complex(0.9 / (4.0 * eta) / norm_Y(phi0, -1.0));
  SolveResult result = picard_solve(build_initial_trajectory(phi0, table, uniform_times(1.0, 200)), spec, table);
  return {std::move(table), std::move(phi0), eta, std::move(result)};
}

const DeskRun& desk32() {
  static const DeskRun run = desk_run(32);
  return run;
}

void mild_vs_oracle(Outcome& o) {
  const DeskRun& run = desk32();
  OracleConfig cfg;
  cfg.dt = 1e-4;
  cfg.output_times = {0.0, 1.0};
  const Trajectory oracle = integrate(run.phi0, cfg, run.table);
  const double err = relative_l2(run.result.solution.back(), oracle.back());
  o.detail << "rel l2 error at t=1: " << sci(err) << " (< 1e-6), oracle dt=1e-4";
  o.check(err < 1e-6, "relative error");
}

void fixed_point_guarantees(Outcome& o) {
  const DeskRun& run = desk32();
  const SolveResult& r = run.result;
  const double bound = 1.0 / (2.0 * run.eta);
  const double worst_iterate = *std::max_element(r.iterate_norms.begin(), r.iterate_norms.end());
  const double product = r.gate.product;
  double worst_decay = 0.0;
  for (std::size_t m = 1; m < r.residuals.size(); ++m) {
    worst_decay = std::max(worst_decay, r.residuals[m] / r.residuals[m - 1]);
  }
  o.detail << "max iterate " << sci(worst_iterate) << " < 1/(2eta)=" << sci(bound) << "; |psi| "
           << sci(r.solution_norms.total()) << " <= 2|x0|=" << sci(2 * r.x0_norms.total()) << "; residual "
           << sci(r.residual) << " < 1e-10; decay ratio " << sci(worst_decay) << " <= " << sci(product + 0.05)
           << " (" << r.iterations << " iterations)";
  o.check(worst_iterate < bound, "iterate bound");
  o.check(r.solution_norms.total() <= 2.0 * r.x0_norms.total(), "solution bound");
  o.check(r.residual < 1e-10, "residual");
  o.check(worst_decay <= product + 0.05, "geometric decay");
}

void duhamel_closed_form(Outcome& o) {
  const TorusGrid g({2 * pi}, 8);
  const auto table = build_symbol_table(g, 1.0);

  // Constant source 2 cos x: B(t, 2) = -(1 - e^{-12t})/12.
  const auto times = uniform_times(1.0, 1000);
  const Trajectory F(times, std::vector<SpectrumField>(times.size(), cos1_fixture(g)));
  const auto B = duhamel_bilinear(F, F, table);
  double worst = 0.0;
  for (double t : {0.01, 0.1, 1.0}) {
    const auto n = static_cast<std::size_t>(std::lround(t * 1000));
    worst = std::max(worst, std::abs(B[n].at({2, 0}) - Complex(-(1 - std::exp(-12 * t)) / 12)));
  }
  o.detail << "max abs error at t in {0.01,0.1,1}, M=1000: " << sci(worst) << " (< 1e-10)";
  o.check(worst < 1e-10, "closed form");

  // Step halving on the decaying source e^{-3t} 2 cos x, whose product is not
  // linear in s, so the quadrature error is visible:
  // B(t, 2) = -(e^{-6t} - e^{-12t})/6.
  auto error = [&](int M) {
    const auto ts = uniform_times(1.0, M);
    Trajectory G(g, ts);
    for (std::size_t n = 0; n < ts.size(); ++n) G[n] = Complex(std::exp(-3 * ts[n])) * cos1_fixture(g);
    const auto b = duhamel_bilinear(G, G, table);
    return std::abs(b.back().at({2, 0}) - Complex(-(std::exp(-6.0) - std::exp(-12.0)) / 6));
  };
  double worst_ratio = kInfinity;
  o.detail << "; halving ratios";
  for (int M : {250, 500, 1000}) {
    const double ratio = error(M) / error(2 * M);
    worst_ratio = std::min(worst_ratio, ratio);
    o.detail << " " << M << "->" << 2 * M << ":" << sci(ratio);
  }
  o.detail << " (>= 3.9)";
  o.check(worst_ratio >= 3.9, "halving improvement");
}

void report_lines(Outcome& o, const std::vector<EstimateReport>& reports, const std::string& label) {
  for (const auto& r : reports) {
    o.detail << "\n      " << (label.empty() ? "" : label + " ") << r.id << " worst_ratio=" << sci(r.worst_ratio)
             << (r.informational ? " (informational)" : "") << (r.passed ? "" : " FAILED");
    if (!r.informational) o.check(r.passed, label + " " + r.id);
  }
}

void linear_suite(Outcome& o) {
  struct Config {
    std::string label;
    std::vector<double> lengths;
    int N;
    double m1;
  };
  const std::vector<Config> configs{{"1D L=pi", {pi}, 32, -0.25},
                                    {"1D L=4pi,T=1", {4 * pi}, 32, -0.25},
                                    {"2D L=(pi,pi)", {pi, pi}, 12, 0.75}};
  o.detail << "200 trials per configuration, (m1, m2) = (-1/4, 9/4) in 1D and (3/4, 9/4) in 2D";
  for (const auto& c : configs) {
    const auto table = build_symbol_table(TorusGrid(c.lengths, c.N), 1.0);
    report_lines(o, check_linear_estimates(table, 200, 20240601, c.m1, 2.25, 1.0, 64), c.label);
  }
}

void bilinear_suite(Outcome& o) {
  o.detail << "200 trials per bound, worst ratio of |B| over the normalized bound";
  const auto t1 = build_symbol_table(TorusGrid({pi}, 24), 1.0);
  report_lines(o, check_bilinear_estimates(t1, 200, 11, SpacePair::wiener, 0.25, 1.0, 64), "1D L=pi");
  report_lines(o, check_bilinear_estimates(t1, 200, 12, SpacePair::pseudomeasure_1d, 0.25, 1.0, 64), "1D L=pi");
  const auto tb = build_symbol_table(TorusGrid({4 * pi}, 24), 1.0);
  report_lines(o, check_bilinear_estimates(tb, 200, 13, SpacePair::wiener, 0.25, 1.0, 64), "1D L=4pi,T=1");
  report_lines(o, check_bilinear_estimates(tb, 200, 14, SpacePair::pseudomeasure_1d, 0.25, 1.0, 64),
               "1D L=4pi,T=1");
  const auto t2 = build_symbol_table(TorusGrid({pi, pi}, 6), 1.0);
  report_lines(o, check_bilinear_estimates(t2, 200, 15, SpacePair::pseudomeasure_2d, 0.25, 1.0, 32),
               "2D L=(pi,pi)");
}

void elementary_suite(Outcome& o) {
  o.detail << "exhaustive over |k_i|,|j_i| <= 30";
  for (int dim : {1, 2}) {
    for (double p : {0.1, 0.25, 0.4}) report_lines(o, check_elementary_inequalities(dim, 30, p), "");
  }
}

void gevrey_grid(Outcome& o) {
  const auto grid = log_spaced(1e-6, 10.0, 60);
  o.detail << "60x60 log-spaced (s,t) grid on [1e-6, 10], N=32, b=0.9*M2/2, a in {0.5,1,2}";
  for (auto lengths : {std::vector<double>{pi}, std::vector<double>{5.0}}) {
    const auto table = build_symbol_table(TorusGrid(lengths, 32));
    std::vector<GevreyWeight> weights{{WeightKind::linear, 0.9 * table.m2() / 2}};
    for (double a : {0.5, 1.0, 2.0}) weights.push_back({WeightKind::fourth_root, a});
    report_lines(o, check_gevrey_lemmas(table, weights, grid, grid), "L=" + sci(lengths[0]));
  }
}

void analyticity(Outcome& o) {
  // L = 5 keeps Case A (M2 ~ 0.91) while the spectrum decays slowly enough
  // for four shells to clear the noise floor; at L = pi the first four
  // coefficients already span ~30 decades by t = 1.
  const auto table = build_symbol_table(TorusGrid({5.0}, 32));
  SolveSpec spec;
  spec.tol = 1e-22;
  spec.max_iter = 200;
  const double noise_floor = 1e-20;
  const double a = 1.0;
  const GevreyWeight lin{WeightKind::linear, 0.9 * table.m2() / 2};
  const GevreyWeight root{WeightKind::fourth_root, a};
  const auto times = uniform_times(1.0, 200);

  // Scale the data so that every one of the three solves passes its gate
  // with 4 eta |x0| <= 0.9.
  const SpectrumField unit = cos1_fixture(table.grid());
  double worst = 4 * compute_eta(spec, table).eta *
                 pair_norms(build_initial_trajectory(unit, table, times), spec.pair, spec.p).total();
  for (const auto& w : {lin, root}) {
    worst = std::max(worst, 4 * compute_eta(spec, weighted_bound_constants(w, table)).eta *
                                pair_norms(weighted_initial_trajectory(unit, w, table, times), spec.pair, spec.p)
                                    .total());
  }
  SpectrumField phi0 = unit;
  phi0 *= Complex(0.9 / worst);

  const auto plain = picard_solve(build_initial_trajectory(phi0, table, times), spec, table);
  o.detail << "L=5, N=32, a=" << a << ", b=" << sci(lin.param) << ", noise floor " << sci(noise_floor)
           << ", tol " << sci(spec.tol);
  for (const auto& w : {lin, root}) {
    const auto r = solve_weighted(phi0, w, spec, table, times);
    const auto psi = apply_weight(r.solution, w, -1.0);
    double identity = 0.0;
    for (std::size_t n = 0; n < times.size(); ++n) {
      if (n > 0) identity = std::max(identity, relative_l2(psi[n], plain.solution[n]));
    }
    o.detail << "\n      " << to_string(w.kind) << ": gate " << sci(r.gate.product) << ", unweighting "
             << sci(identity) << " (< 1e-6)";
    o.check(identity < 1e-6, "unweighting identity");
    for (double t : {0.1, 0.5, 1.0}) {
      const auto n = static_cast<std::size_t>(std::lround(t * 200));
      const auto fit = estimate_radius(psi[n], noise_floor);
      const double need = std::max(a * std::pow(t, 0.25), lin.param * t) - 0.05;
      o.detail << "; t=" << t << " rho=" << sci(fit.rho) << " >= " << sci(need) << " (" << fit.shells_used
               << " shells)";
      o.check(fit.rho >= need, "radius at t=" + std::to_string(t));
    }
  }
}

void non_comparability(Outcome& o) {
  double previous = 0.0, worst_growth = kInfinity, worst_pm = 0.0;
  for (int N : {8, 16, 32, 64, 128, 256}) {
    const TorusGrid g({pi}, N);
    const auto f = pm_boundary_fixture(g);
    worst_pm = std::max(worst_pm, std::abs(norm_PM(f, -0.25) - 1.0));
    const double y = norm_Y(f, -1.0);
    if (previous > 0) worst_growth = std::min(worst_growth, y - previous);
    previous = y;
  }
  for (int N : {4, 8, 16}) {
    const auto f = pm_boundary_fixture(TorusGrid({pi, pi}, N));
    worst_pm = std::max(worst_pm, std::abs(norm_PM(f, 1 - 0.25) - 1.0));
  }
  o.detail << "pm-boundary: |PM - 1| <= " << sci(worst_pm) << ", min Y[-1] growth per doubling "
           << sci(worst_growth) << " (>= 0.6)";
  o.check(worst_pm <= 1e-15, "pm-boundary PM norm");
  o.check(worst_growth >= 0.6, "pm-boundary log growth");

  double max_y = 0.0, last_pm = 0.0;
  bool growing = true;
  for (int N : {20, 300, 5000, 70000}) {
    const auto f = y_lacunary_fixture(TorusGrid({pi}, N));
    max_y = std::max(max_y, norm_Y(f, -1.0));
    const double pm = norm_PM(f, -0.5);
    growing = growing && pm > last_pm;
    last_pm = pm;
  }
  o.detail << "; y-lacunary: max Y[-1] " << sci(max_y) << " (<= 1), PM[-1/2] reaches " << sci(last_pm)
           << (growing ? " increasing" : " NOT increasing");
  o.check(max_y <= 1.0, "lacunary Y bound");
  o.check(growing, "lacunary PM growth");
}

void truncation(Outcome& o) {
  const DeskRun& coarse = desk32();
  const DeskRun fine = desk_run(64);
  double worst = 0.0;
  const SpectrumField& a = coarse.result.solution.back();
  const SpectrumField& b = fine.result.solution.back();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Mode& k = a.grid().mode(i);
    if (a.grid().norm(i) <= 8.0) worst = std::max(worst, std::abs(a[i] - b.at(k)));
  }
  o.detail << "max coefficient change at |k| <= 8, t=1, N 32->64: " << sci(worst) << " (< 1e-8)";
  o.check(worst < 1e-8, "truncation");
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"mild solution matches the Galerkin oracle", mild_vs_oracle},
      {"fixed-point iteration guarantees", fixed_point_guarantees},
      {"closed-form Duhamel fixture and second-order quadrature", duhamel_closed_form},
      {"linear semigroup estimates", linear_suite},
      {"bilinear estimates", bilinear_suite},
      {"elementary lattice inequalities", elementary_suite},
      {"weight kernel grid checks", gevrey_grid},
      {"analyticity radius from weighted solves", analyticity},
      {"non-comparability fixtures", non_comparability},
      {"truncation robustness", truncation},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failures = 0;
  for (std::size_t c = 0; c < criteria.size(); ++c) {
    const int id = static_cast<int>(c) + 1;
    if (!selected.empty() && !selected.count(id)) continue;
    Outcome o;
    try {
      criteria[c].second(o);
    } catch (const Error& e) {
      o.passed = false;
      o.detail << " [" << e.category() << ": " << e.what() << "]";
    }
    failures += o.passed ? 0 : 1;
    std::printf("%s criterion %d: %s -- %s\n", o.passed ? "PASS" : "FAIL", id, criteria[c].first.c_str(),
                o.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
