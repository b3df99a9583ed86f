#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ks/errors.hpp"
#include "ks/fixtures.hpp"
#include "ks/norms.hpp"

using namespace ks;
constexpr double pi = std::numbers::pi;

namespace {

Trajectory constant_trajectory(const SpectrumField& f, double T, int intervals) {
  const auto times = uniform_times(T, intervals);
  return Trajectory(times, std::vector<SpectrumField>(times.size(), f));
}

}  // namespace

TEST_CASE("field norms on the two-mode fixture") {
  const TorusGrid g({pi}, 8);
  const auto f = cos1_fixture(g);
  CHECK(norm_Y(f, -1.0) == doctest::Approx(2.0));
  CHECK(norm_PM(f, -0.25) == doctest::Approx(1.0));
  CHECK(norm_Y(SpectrumField(g), 3.0) == 0.0);
}

TEST_CASE("lacunary partial sums") {
  const TorusGrid g({pi}, 300);
  const auto f = y_lacunary_fixture(g);
  CHECK(norm_Y(f, -1.0) == doctest::Approx(0.5 + 0.25).epsilon(1e-14));
  CHECK(norm_PM(f, -0.5) == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("pm-boundary fixture") {
  for (int dim : {1, 2}) {
    double previous = 0.0;
    for (int N : {8, 16, 32}) {
      const TorusGrid g(std::vector<double>(dim, pi), N);
      const auto f = pm_boundary_fixture(g);
      CHECK(norm_PM(f, dim - 1 - 0.25) == doctest::Approx(1.0).epsilon(1e-15));
      const double y = norm_Y(f, -1.0);
      CHECK(y > previous);
      if (dim == 1 && previous > 0) CHECK(y - previous == doctest::Approx(2 * std::log(2.0)).epsilon(0.05));
      previous = y;
    }
  }
}

TEST_CASE("space-time norms") {
  const TorusGrid g({pi}, 4);
  const auto f = cos1_fixture(g);
  const auto c = constant_trajectory(f, 1.0, 10);
  CHECK(norm_calY(c, -1.0) == doctest::Approx(2.0));
  CHECK(norm_calX(c, 3.0) == doctest::Approx(2.0));
  CHECK(norm_calPM(c, 0.75) == doctest::Approx(1.0));

  // Per-mode sup at different times: e^{-t} at k = 1, t at k = -1.
  const auto times = uniform_times(1.0, 50);
  Trajectory t(g, times);
  for (std::size_t n = 0; n < times.size(); ++n) {
    t[n].set({1, 0}, std::exp(-times[n]));
    t[n].set({-1, 0}, times[n]);
  }
  CHECK(norm_calY(t, 0.0) == doctest::Approx(2.0));
  for (std::size_t n = 0; n < times.size(); ++n) CHECK(norm_calY(t, 0.0) >= norm_Y(t[n], 0.0));

  // e^{-t|k|}: sup at t = 0, |k| = 1.
  Trajectory d(g, times);
  for (std::size_t n = 0; n < times.size(); ++n)
    for (std::size_t i = 0; i < g.size(); ++i) d[n][i] = std::exp(-times[n] * g.norm(i));
  CHECK(norm_calPM(d, 0.0) == doctest::Approx(1.0));

  CHECK(norm_calX(Trajectory(g, times), 2.0) == 0.0);
  CHECK_THROWS_AS(norm_calX(Trajectory(g, {0.0}), 2.0), ConfigError);
}

TEST_CASE("calX integrates a stiff exponential exactly") {
  const TorusGrid g({pi}, 2);
  const double T = std::log(1e16) / 12.0;
  const auto times = uniform_times(T, 40);
  Trajectory t(g, times);
  for (std::size_t n = 0; n < times.size(); ++n) t[n].set({1, 0}, std::exp(-12.0 * times[n]));
  CHECK(norm_calX(t, 2.0) == doctest::Approx((1.0 - 1e-16) / 12.0).epsilon(1e-12));
}

TEST_CASE("calX of a constant trajectory is T times Y") {
  Rng rng(11);
  const TorusGrid g({pi, 2.5}, 6);
  const auto f = random_field(g, 2.0, rng);
  const auto c = constant_trajectory(f, 2.5, 7);
  CHECK(norm_calX(c, 1.5) == doctest::Approx(2.5 * norm_Y(f, 1.5)).epsilon(1e-13));
}

TEST_CASE("log-mean rule") {
  CHECK(log_mean_integral(1.0, 1.0, 0.5) == doctest::Approx(0.5));
  CHECK(log_mean_integral(1.0, std::exp(-3.0), 2.0) == doctest::Approx(2.0 * (1 - std::exp(-3.0)) / 3.0));
  CHECK(log_mean_integral(0.0, 2.0, 1.0) == doctest::Approx(1.0));
  CHECK(log_mean_integral(1.0, 1.0 + 1e-9, 1.0) == doctest::Approx(1.0 + 0.5e-9).epsilon(1e-15));
}

TEST_CASE("homogeneity, triangle inequality, monotonicity") {
  Rng rng(5);
  const TorusGrid g({pi}, 12);
  const auto times = uniform_times(1.0, 20);
  for (int trial = 0; trial < 25; ++trial) {
    const auto a = random_trajectory(g, times, 1.0, rng);
    const auto b = random_trajectory(g, times, 1.0, rng);
    for (auto norm : {norm_calY, norm_calX, norm_calPM}) {
      for (double m : {-1.0, 0.5, 3.0}) {
        CHECK(norm(Complex(-2.5) * a, m) == doctest::Approx(2.5 * norm(a, m)).epsilon(1e-13));
        CHECK(norm(a + b, m) <= (norm(a, m) + norm(b, m)) * (1 + 1e-13));
      }
    }
    for (auto norm : {norm_Y, norm_PM}) {
      CHECK(norm(Complex(0, 3) * a[3], -0.25) == doctest::Approx(3 * norm(a[3], -0.25)).epsilon(1e-13));
      CHECK(norm(a[3] + b[3], 1.0) <= (norm(a[3], 1.0) + norm(b[3], 1.0)) * (1 + 1e-13));
    }
    // Coefficient-wise domination.
    Trajectory dom = a;
    for (std::size_t n = 0; n < dom.nodes(); ++n)
      for (std::size_t i = 0; i < g.size(); ++i) dom[n][i] = std::abs(a[n][i]) + std::abs(b[n][i]);
    CHECK(norm_calPM(dom, 0.5) >= norm_calPM(a, 0.5));
    CHECK(norm_calX(dom, 0.5) >= norm_calX(a, 0.5));
  }
}

TEST_CASE("norm ids and reports") {
  const auto ids = parse_norm_list("Y[-1],PM[-0.25],X[3],calY[-1],calPM[0.75],calX[2.25]");
  REQUIRE(ids.size() == 6);
  CHECK(ids[1].family == NormFamily::PM);
  CHECK(ids[1].m == -0.25);
  CHECK(ids[2].family == NormFamily::calX);
  CHECK(ids[2].time_dependent());
  CHECK_THROWS_AS(parse_norm_id("Q[1]"), ConfigError);
  CHECK_THROWS_AS(parse_norm_id("Y[abc]"), ConfigError);
  CHECK_THROWS_AS(parse_norm_id("Y-1"), ConfigError);

  const TorusGrid g({pi}, 4);
  const auto f = cos1_fixture(g);
  const auto report = make_norm_report(f, parse_norm_list("Y[-1],PM[-0.25]"));
  const auto j = report.to_json();
  CHECK(j["Y[-1]"].get<double>() == doctest::Approx(2.0));
  CHECK(j["PM[-0.25]"].get<double>() == doctest::Approx(1.0));
  CHECK(j["meta"]["N"] == 4);
  CHECK_THROWS_AS(make_norm_report(f, parse_norm_list("X[3]")), ConfigError);

  const auto table = build_symbol_table(g);
  const auto times = uniform_times(1.0, 10);
  std::vector<SpectrumField> nodes;
  for (double t : times) {
    SpectrumField h = f;
    h *= Complex(std::exp(-12.0 * t));
    nodes.push_back(h);
  }
  const auto tr = make_norm_report(Trajectory(times, nodes), parse_norm_list("X[3]"), &table);
  // Tail of int_1^inf 2 e^{-12 t} dt.
  CHECK(tr.tail_estimate.at("X[3]") == doctest::Approx(2 * std::exp(-12.0) / 12.0));
  CHECK(tr.values.at("X[3]") == doctest::Approx(2 * (1 - std::exp(-12.0)) / 12.0).epsilon(1e-12));
}
