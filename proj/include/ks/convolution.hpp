#pragma once

// Dealiased evaluation of P(grad F . grad G) in Fourier variables.
//
// Both gradients are synthesized on a padded physical grid of P >= 3N + 1
// points per axis, multiplied pointwise, and transformed back; with that much
// padding the quadratic product of two fields band-limited to |k_j| <= N has
// no aliasing error on the retained modes.

#include <cstddef>
#include <memory>
#include <vector>

#include "ks/grid.hpp"

namespace ks {

/// Smallest size >= n whose prime factors are 2, 3, 5 and 7.
int fft_friendly_size(int n);

class ConvolutionPlan {
 public:
  explicit ConvolutionPlan(const TorusGrid& grid);
  ~ConvolutionPlan();
  ConvolutionPlan(const ConvolutionPlan&) = delete;
  ConvolutionPlan& operator=(const ConvolutionPlan&) = delete;
  ConvolutionPlan(ConvolutionPlan&& other) noexcept;
  ConvolutionPlan& operator=(ConvolutionPlan&&) = delete;

  const TorusGrid& grid() const noexcept { return grid_; }
  /// Physical points per axis.
  int padded_size() const noexcept { return padded_; }
  /// Largest wavenumber representable on the padded grid.
  int padded_cutoff() const noexcept { return padded_ / 2; }

  /// Zero-mean Fourier coefficients of grad F . grad G with the physical
  /// factors (2pi/L_i)^2 kept. Throws ConfigError on grid mismatch.
  SpectrumField gradient_dot(const SpectrumField& F, const SpectrumField& G);

 private:
  void synthesize_derivative(const SpectrumField& f, int axis);

  TorusGrid grid_;
  int padded_;
  std::size_t points_;
  std::vector<std::ptrdiff_t> slot_;  // padded-array offset of every stored mode
  struct Buffers;
  std::unique_ptr<Buffers> buf_;
};

/// One-shot convenience; builds a plan per call.
SpectrumField gradient_dot(const SpectrumField& F, const SpectrumField& G);

}  // namespace ks
