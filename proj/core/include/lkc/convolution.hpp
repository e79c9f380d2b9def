#pragma once

#include <memory>

#include "lkc/green.hpp"
#include "lkc/lattice.hpp"

namespace lkc {

enum class ConvolutionMethod { direct, fft };

/// (R_alpha * w)(x) = sum_y R_alpha(x - y) w(y) over the sites y of w's box.
///
/// Dirichlet boxes use the plain linear convolution (w is zero outside the
/// box). Periodic boxes use circular convolution at the box period with the
/// minimum-image kernel R_alpha(wrap(x - y)). Throws std::invalid_argument
/// when the kernel does not cover the box.
Field convolve(const GreenKernel& kernel, const Field& w, ConvolutionMethod method = ConvolutionMethod::fft);

/// FFT convolution against one kernel on one box, with the kernel spectrum
/// and FFTW plans prepared once. apply() is const and safe to call from
/// several threads at once.
class Convolver {
 public:
  Convolver(const GreenKernel& kernel, const LatticeBox& box);
  ~Convolver();
  Convolver(Convolver&&) noexcept;
  Convolver& operator=(Convolver&&) noexcept;
  Convolver(const Convolver&) = delete;
  Convolver& operator=(const Convolver&) = delete;

  const LatticeBox& box() const;
  /// Padded transform length per axis.
  int transform_size() const;
  Field apply(const Field& w) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Smallest n >= target of the form 2^a 3^b 5^c 7^d.
int fft_friendly_size(int target);

}  // namespace lkc
