#include "ks/convolution.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>

#include "ks/errors.hpp"

namespace ks {

namespace {

// FFTW's planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

bool is_smooth(int n) {
  for (int p : {2, 3, 5, 7}) {
    while (n % p == 0) n /= p;
  }
  return n == 1;
}

}  // namespace

int fft_friendly_size(int n) {
  n = std::max(n, 1);
  while (!is_smooth(n)) ++n;
  return n;
}

struct ConvolutionPlan::Buffers {
  fftw_complex* work = nullptr;
  fftw_complex* accum = nullptr;
  std::vector<Complex> stash;
  fftw_plan backward = nullptr;
  fftw_plan forward = nullptr;

  ~Buffers() {
    std::lock_guard lock(planner_mutex());
    if (backward) fftw_destroy_plan(backward);
    if (forward) fftw_destroy_plan(forward);
    fftw_free(work);
    fftw_free(accum);
  }
};

ConvolutionPlan::ConvolutionPlan(const TorusGrid& grid)
    : grid_(grid), padded_(fft_friendly_size(3 * grid.cutoff() + 1)), buf_(std::make_unique<Buffers>()) {
  const int n = grid_.dim();
  points_ = static_cast<std::size_t>(padded_);
  if (n == 2) points_ *= static_cast<std::size_t>(padded_);

  slot_.resize(grid_.size());
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    const Mode& k = grid_.mode(i);
    const std::ptrdiff_t a = (k[0] + padded_) % padded_;
    const std::ptrdiff_t b = (k[1] + padded_) % padded_;
    slot_[i] = n == 1 ? a : a * padded_ + b;
  }

  buf_->work = fftw_alloc_complex(points_);
  buf_->accum = fftw_alloc_complex(points_);
  buf_->stash.resize(points_);
  int dims[2] = {padded_, padded_};
  std::lock_guard lock(planner_mutex());
  buf_->backward = fftw_plan_dft(n, dims, buf_->work, buf_->work, FFTW_BACKWARD, FFTW_ESTIMATE);
  buf_->forward = fftw_plan_dft(n, dims, buf_->accum, buf_->accum, FFTW_FORWARD, FFTW_ESTIMATE);
}

ConvolutionPlan::~ConvolutionPlan() = default;
ConvolutionPlan::ConvolutionPlan(ConvolutionPlan&& other) noexcept = default;

void ConvolutionPlan::synthesize_derivative(const SpectrumField& f, int axis) {
  auto* work = reinterpret_cast<Complex*>(buf_->work);
  std::fill(work, work + points_, Complex{});
  const double w = grid_.wavenumber(axis);
  for (std::size_t i = 0; i < f.size(); ++i) {
    work[slot_[i]] = Complex(0.0, w * grid_.mode(i)[static_cast<std::size_t>(axis)]) * f[i];
  }
  fftw_execute(buf_->backward);
}

SpectrumField ConvolutionPlan::gradient_dot(const SpectrumField& F, const SpectrumField& G) {
  if (!(F.grid() == grid_) || !(G.grid() == grid_)) throw ConfigError("gradient_dot: grid mismatch");

  auto* work = reinterpret_cast<Complex*>(buf_->work);
  auto* accum = reinterpret_cast<Complex*>(buf_->accum);
  std::fill(accum, accum + points_, Complex{});
  const bool square = &F == &G;

  for (int axis = 0; axis < grid_.dim(); ++axis) {
    synthesize_derivative(F, axis);
    if (square) {
      for (std::size_t x = 0; x < points_; ++x) accum[x] += work[x] * work[x];
      continue;
    }
    std::copy(work, work + points_, buf_->stash.begin());
    synthesize_derivative(G, axis);
    for (std::size_t x = 0; x < points_; ++x) accum[x] += buf_->stash[x] * work[x];
  }
  fftw_execute(buf_->forward);

  SpectrumField out(grid_);
  const double scale = 1.0 / static_cast<double>(points_);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = accum[slot_[i]] * scale;
  return out;
}

SpectrumField gradient_dot(const SpectrumField& F, const SpectrumField& G) {
  ConvolutionPlan plan(F.grid());
  return plan.gradient_dot(F, G);
}

}  // namespace ks
