#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ks/errors.hpp"
#include "ks/estimate_lab.hpp"

using namespace ks;
constexpr double pi = std::numbers::pi;

TEST_CASE("elementary inequalities") {
  for (int dim : {1, 2}) {
    const auto reports = check_elementary_inequalities(dim, dim == 1 ? 30 : 8, 0.25);
    REQUIRE(reports.size() == 5);
    CHECK(all_passed(reports));
  }
  // In 1D the bound |j|/(|k||k-j|) <= 2 is attained at k = 1, j = 2.
  const auto r = check_elementary_inequalities(1, 5, 0.1);
  CHECK(r[1].worst_ratio == doctest::Approx(1.0));
  // 1 <= |k-j|/|j| + |j|/|k-j| is far from tight: the sum is at least 2.
  CHECK(r[0].worst_ratio == doctest::Approx(0.5));
  CHECK_THROWS_AS(check_elementary_inequalities(1, 1, 0.25), ConfigError);
  CHECK_THROWS_AS(check_elementary_inequalities(3, 5, 0.25), ConfigError);
}

TEST_CASE("linear estimates") {
  const auto a = build_symbol_table(TorusGrid({pi}, 16));
  const auto ra = check_linear_estimates(a, 20, 7, -0.25, 2.25);
  CHECK(all_passed(ra));
  CHECK(ra[0].worst_ratio == doctest::Approx(1.0));  // attained at t = 0
  CHECK(ra[1].constant == doctest::Approx(2 * std::riemann_zeta(1.5) / 12));

  const auto b = build_symbol_table(TorusGrid({4 * pi}, 16), 1.0);
  CHECK(all_passed(check_linear_estimates(b, 20, 7, -0.25, 2.25)));
  CHECK_THROWS_AS(check_linear_estimates(a, 2, 7, 0.0, 3.5), ConfigError);
}

TEST_CASE("bilinear estimates") {
  const auto a = build_symbol_table(TorusGrid({pi}, 12));
  const auto y = check_bilinear_estimates(a, 10, 3, SpacePair::wiener, 0.25, 1.0, 32);
  CHECK(all_passed(y));
  CHECK(y[0].normalization == doctest::Approx(4.0));
  for (const auto& r : y) CHECK(r.worst_ratio > 0.0);

  const auto pm = check_bilinear_estimates(a, 10, 3, SpacePair::pseudomeasure_1d, 0.25, 1.0, 32);
  REQUIRE(pm.size() == 3);
  CHECK(pm[2].informational);
  CHECK(all_passed(pm));
  CHECK(pm[2].details["distinguishes_candidates"] == false);
}

TEST_CASE("weight kernel lemmas") {
  const auto table = build_symbol_table(TorusGrid({pi}, 32));
  const auto grid = log_spaced(1e-6, 10.0, 20);
  const std::vector<GevreyWeight> weights{{WeightKind::linear, 0.9 * table.m2() / 2},
                                          {WeightKind::fourth_root, 1.0}};
  const auto reports = check_gevrey_lemmas(table, weights, grid, grid);
  CHECK(reports.size() == 4);
  CHECK(all_passed(reports));
  CHECK_THROWS_AS(check_gevrey_lemmas(table, {{WeightKind::linear, table.m2()}}, grid, grid), ConfigError);
  CHECK(log_spaced(1.0, 100.0, 3)[1] == doctest::Approx(10.0));
}
