#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ks/convolution.hpp"
#include "ks/errors.hpp"
#include "ks/fixtures.hpp"
#include "ks/mild_operator.hpp"

using namespace ks;
constexpr double pi = std::numbers::pi;

namespace {

// q(k) = -sum_j sum_i (2pi/L_i)^2 (k_i - j_i) j_i F(k - j) G(j), by brute force.
SpectrumField direct_gradient_dot(const SpectrumField& F, const SpectrumField& G) {
  const TorusGrid& g = F.grid();
  SpectrumField out(g);
  for (std::size_t ik = 0; ik < g.size(); ++ik) {
    const Mode& k = g.mode(ik);
    Complex sum = 0.0;
    for (std::size_t ij = 0; ij < g.size(); ++ij) {
      const Mode& j = g.mode(ij);
      const Mode d{k[0] - j[0], k[1] - j[1]};
      const auto id = g.find(d);
      if (!id) continue;
      double dot = 0.0;
      for (int a = 0; a < g.dim(); ++a) dot += g.wavenumber(a) * g.wavenumber(a) * d[a] * j[a];
      sum -= dot * F[*id] * G[ij];
    }
    out[ik] = sum;
  }
  return out;
}

double max_abs_diff(const SpectrumField& a, const SpectrumField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

Trajectory constant_trajectory(const SpectrumField& f, const std::vector<double>& times) {
  return Trajectory(times, std::vector<SpectrumField>(times.size(), f));
}

}  // namespace

TEST_CASE("fft sizes") {
  CHECK(fft_friendly_size(97) == 98);
  CHECK(fft_friendly_size(1) == 1);
  CHECK(fft_friendly_size(121) == 125);
  ConvolutionPlan plan(TorusGrid({pi}, 32));
  CHECK(plan.padded_size() >= 3 * 32 + 1);
}

TEST_CASE("gradient_dot on 2 cos x") {
  const TorusGrid g({2 * pi}, 8);
  const auto F = cos1_fixture(g);
  const auto q = gradient_dot(F, F);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const int k = g.mode(i)[0];
    const double expected = (k == 2 || k == -2) ? -1.0 : 0.0;
    CHECK(std::abs(q[i] - expected) < 1e-14);
  }
  CHECK(gradient_dot(SpectrumField(g), F).is_zero());
}

TEST_CASE("gradient_dot matches the direct convolution sum") {
  Rng rng(42);
  for (auto lengths : {std::vector<double>{pi}, std::vector<double>{4 * pi}, std::vector<double>{pi, 5.0}}) {
    const TorusGrid g(lengths, lengths.size() == 1 ? 24 : 7);
    ConvolutionPlan plan(g);
    for (int trial = 0; trial < 5; ++trial) {
      const auto F = random_field(g, 1.0, rng);
      const auto G = random_field(g, 0.5, rng);
      const auto fast = plan.gradient_dot(F, G);
      const auto slow = direct_gradient_dot(F, G);
      CHECK(max_abs_diff(fast, slow) < 1e-12);
      CHECK(fast.is_hermitian(1e-12));
      CHECK(plan.gradient_dot(G, F) == fast);
      CHECK(max_abs_diff(plan.gradient_dot(F, F), direct_gradient_dot(F, F)) < 1e-12);
    }
  }
  CHECK_THROWS_AS(gradient_dot(SpectrumField(TorusGrid({pi}, 4)), SpectrumField(TorusGrid({pi}, 5))), ConfigError);
}

TEST_CASE("semigroup") {
  const TorusGrid g({pi}, 8);
  const auto table = build_symbol_table(g);
  Rng rng(7);
  const auto u = random_field(g, 1.0, rng);
  CHECK(apply_semigroup(u, 0.0, table) == u);
  const auto s = apply_semigroup(cos1_fixture(g), 1.0, table);
  CHECK(s.at({1, 0}).real() == doctest::Approx(std::exp(-12.0)).epsilon(1e-15));

  const auto a = apply_semigroup(apply_semigroup(u, 0.013, table), 0.029, table);
  const auto b = apply_semigroup(u, 0.042, table);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-13 * std::abs(b[i]) + 1e-300);
  CHECK(b.is_hermitian());
  CHECK_THROWS_AS(apply_semigroup(u, -1.0, table), ConfigError);

  const TorusGrid g2({2 * pi}, 4);
  const auto t2 = build_symbol_table(g2, 1.0);
  CHECK(apply_semigroup(cos1_fixture(g2), 0.7, t2) == cos1_fixture(g2));
  CHECK_THROWS_AS(apply_semigroup(cos1_fixture(g2), 1.5, t2), ConfigError);
}

TEST_CASE("exponential step weights") {
  // Exact for q(s) = alpha + beta s on one interval, small and large lambda h.
  for (double lambda : {0.0, 1e-6, 0.3, 7.0, 400.0, -2.0}) {
    const double h = 0.1, q0 = 1.5, q1 = -0.25;
    const auto st = exponential_step(lambda, h);
    // Reference by composite Simpson on a fine grid.
    const int n = 20000;
    double ref = 0.0;
    for (int i = 0; i <= n; ++i) {
      const double tau = h * i / n;
      const double q = q1 + (q0 - q1) * tau / h;  // q(t_i + h - tau)
      const double w = (i == 0 || i == n) ? 1 : (i % 2 ? 4 : 2);
      ref += w * std::exp(-lambda * tau) * q;
    }
    ref *= h / (3.0 * n);
    CHECK(st.w_prev * q0 + st.w_next * q1 == doctest::Approx(ref).epsilon(1e-10));
    CHECK(st.decay == doctest::Approx(std::exp(-lambda * h)));
  }
}

TEST_CASE("closed-form Duhamel fixture") {
  const TorusGrid g({2 * pi}, 8);
  const auto table = build_symbol_table(g, 1.0);
  const auto times = uniform_times(1.0, 1000);
  const auto F = constant_trajectory(cos1_fixture(g), times);
  const auto B = duhamel_bilinear(F, F, table);
  const std::size_t i2 = *g.find({2, 0});
  for (std::size_t n : {std::size_t{10}, std::size_t{100}, std::size_t{1000}}) {
    const double t = times[n];
    CHECK(std::abs(B[n][i2] - Complex(-(1 - std::exp(-12 * t)) / 12)) < 1e-14);
  }
  CHECK(B[0].is_zero());
  CHECK(B[500].is_hermitian(1e-16));
}

TEST_CASE("Duhamel quadrature is second order") {
  const TorusGrid g({2 * pi}, 8);
  const auto table = build_symbol_table(g, 1.0);
  const double lambda = 3.0;
  auto error = [&](int M) {
    const auto times = uniform_times(1.0, M);
    Trajectory F(g, times);
    for (std::size_t n = 0; n < times.size(); ++n) F[n] = Complex(std::exp(-lambda * times[n])) * cos1_fixture(g);
    const auto B = duhamel_bilinear(F, F, table);
    const double t = 1.0;
    const double exact = -(std::exp(-2 * lambda * t) - std::exp(-12 * t)) / (12 - 2 * lambda);
    return std::abs(B.back().at({2, 0}) - exact);
  };
  const double e1 = error(100), e2 = error(200), e3 = error(400);
  CHECK(e1 / e2 >= 3.9);
  CHECK(e2 / e3 >= 3.9);
  CHECK(error(1000) < 1e-6);
}

TEST_CASE("bilinear operator properties") {
  Rng rng(9);
  const TorusGrid g({pi, 5.0}, 5);
  const auto table = build_symbol_table(g);
  const auto times = uniform_times(0.5, 20);
  const auto F = random_trajectory(g, times, 2.0, rng);
  const auto G = random_trajectory(g, times, 2.0, rng);
  const auto B = duhamel_bilinear(F, G, table);
  const auto Bs = duhamel_bilinear(G, F, table);
  const auto Ba = duhamel_bilinear(Complex(-1.75) * F, G, table);
  for (std::size_t n = 0; n < times.size(); ++n) {
    CHECK(B[n] == Bs[n]);
    CHECK(B[n].is_hermitian(1e-15));
    CHECK(max_abs_diff(Ba[n], Complex(-1.75) * B[n]) < 1e-14);
  }
  CHECK(B[0].is_zero());
  const Trajectory other(g, uniform_times(0.5, 10));
  CHECK_THROWS_AS(duhamel_bilinear(F, other, table), ConfigError);
}
