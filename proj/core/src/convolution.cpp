#include "lkc/convolution.hpp"

#include <fftw3.h>

#include <complex>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace lkc {

namespace {

// FFTW planning is not thread safe; execution with the new-array interface is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwDeleter {
  void operator()(void* p) const { fftw_free(p); }
};
template <typename T>
using FftwBuffer = std::unique_ptr<T[], FftwDeleter>;

template <typename T>
FftwBuffer<T> fftw_alloc(std::size_t n) {
  void* p = fftw_malloc(sizeof(T) * n);
  if (p == nullptr) throw std::bad_alloc();
  return FftwBuffer<T>(static_cast<T*>(p));
}

void require_cover(const GreenKernel& kernel, const LatticeBox& box) {
  if (!kernel.covers(box)) {
    throw std::invalid_argument("kernel table radius " + std::to_string(kernel.table_radius()) +
                                " is insufficient for this box; need " +
                                std::to_string(GreenKernel::required_radius(box)));
  }
}

// Minimum-image displacement on a torus of side L.
int min_image(int d, int side) {
  d %= side;
  if (d < 0) d += side;
  if (d > side / 2) d -= side;
  return d;
}

Field convolve_direct(const GreenKernel& kernel, const Field& w) {
  const LatticeBox& box = w.box();
  Field out(box);
  const std::size_t n = box.site_count();
  const int side = box.side();
  for (std::size_t i = 0; i < n; ++i) {
    const Index3 x = box.site(i);
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double wj = w[j];
      if (wj == 0.0) continue;
      Index3 d = x - box.site(j);
      if (box.periodic()) d = {min_image(d.x1, side), min_image(d.x2, side), min_image(d.x3, side)};
      acc += kernel(d) * wj;
    }
    out[i] = acc;
  }
  return out;
}

}  // namespace

int fft_friendly_size(int target) {
  if (target < 1) return 1;
  for (int n = target;; ++n) {
    int m = n;
    for (int f : {2, 3, 5, 7}) {
      while (m % f == 0) m /= f;
    }
    if (m == 1) return n;
  }
}

struct Convolver::Impl {
  LatticeBox box;
  int p = 0;        // transform length per axis
  int p_half = 0;   // p/2 + 1 complex entries on the last axis
  std::vector<std::complex<double>> spectrum;
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;

  std::size_t real_size() const { return static_cast<std::size_t>(p) * p * p; }
  std::size_t complex_size() const { return static_cast<std::size_t>(p) * p * p_half; }

  ~Impl() {
    std::lock_guard lock(planner_mutex());
    if (forward != nullptr) fftw_destroy_plan(forward);
    if (backward != nullptr) fftw_destroy_plan(backward);
  }
};

Convolver::Convolver(const GreenKernel& kernel, const LatticeBox& box) : impl_(std::make_unique<Impl>()) {
  require_cover(kernel, box);
  Impl& im = *impl_;
  im.box = box;
  const int side = box.side();
  const int m = kernel.table_radius();
  // Periodic boxes convolve circularly at the box period; dirichlet boxes
  // pad to the full linear-convolution length so nothing wraps.
  im.p = box.periodic() ? side : fft_friendly_size(side + 2 * m);
  im.p_half = im.p / 2 + 1;

  auto real = fftw_alloc<double>(im.real_size());
  auto freq = fftw_alloc<fftw_complex>(im.complex_size());
  {
    std::lock_guard lock(planner_mutex());
    im.forward = fftw_plan_dft_r2c_3d(im.p, im.p, im.p, real.get(), freq.get(), FFTW_ESTIMATE);
    im.backward = fftw_plan_dft_c2r_3d(im.p, im.p, im.p, freq.get(), real.get(), FFTW_ESTIMATE);
  }
  if (im.forward == nullptr || im.backward == nullptr) throw std::runtime_error("FFTW planning failed");

  // Kernel placed with displacement z at index z mod p.
  std::fill(real.get(), real.get() + im.real_size(), 0.0);
  const int p = im.p;
  auto idx = [p](int a, int b, int c) {
    auto wrap = [p](int v) { return static_cast<std::size_t>(((v % p) + p) % p); };
    return (wrap(a) * static_cast<std::size_t>(p) + wrap(b)) * static_cast<std::size_t>(p) + wrap(c);
  };
  if (box.periodic()) {
    for (int i = 0; i < p; ++i) {
      for (int j = 0; j < p; ++j) {
        for (int k = 0; k < p; ++k) {
          real[idx(i, j, k)] = kernel(Index3{min_image(i, p), min_image(j, p), min_image(k, p)});
        }
      }
    }
  } else {
    for (int z1 = -m; z1 <= m; ++z1) {
      for (int z2 = -m; z2 <= m; ++z2) {
        for (int z3 = -m; z3 <= m; ++z3) real[idx(z1, z2, z3)] = kernel(Index3{z1, z2, z3});
      }
    }
  }
  fftw_execute_dft_r2c(im.forward, real.get(), freq.get());
  const double scale = 1.0 / static_cast<double>(im.real_size());
  im.spectrum.resize(im.complex_size());
  for (std::size_t q = 0; q < im.complex_size(); ++q) {
    im.spectrum[q] = std::complex<double>(freq[q][0], freq[q][1]) * scale;
  }
}

Convolver::~Convolver() = default;
Convolver::Convolver(Convolver&&) noexcept = default;
Convolver& Convolver::operator=(Convolver&&) noexcept = default;

const LatticeBox& Convolver::box() const { return impl_->box; }
int Convolver::transform_size() const { return impl_->p; }

Field Convolver::apply(const Field& w) const {
  const Impl& im = *impl_;
  if (!(w.box() == im.box)) throw std::invalid_argument("field box does not match the convolver");
  const int side = im.box.side();
  const auto p = static_cast<std::size_t>(im.p);
  auto real = fftw_alloc<double>(im.real_size());
  auto freq = fftw_alloc<fftw_complex>(im.complex_size());
  std::fill(real.get(), real.get() + im.real_size(), 0.0);
  std::size_t q = 0;
  for (int a = 0; a < side; ++a) {
    for (int b = 0; b < side; ++b) {
      for (int c = 0; c < side; ++c) real[(a * p + b) * p + c] = w[q++];
    }
  }
  fftw_execute_dft_r2c(im.forward, real.get(), freq.get());
  for (std::size_t i = 0; i < im.complex_size(); ++i) {
    const std::complex<double> v = std::complex<double>(freq[i][0], freq[i][1]) * im.spectrum[i];
    freq[i][0] = v.real();
    freq[i][1] = v.imag();
  }
  fftw_execute_dft_c2r(im.backward, freq.get(), real.get());
  Field out(im.box);
  q = 0;
  for (int a = 0; a < side; ++a) {
    for (int b = 0; b < side; ++b) {
      for (int c = 0; c < side; ++c) out[q++] = real[(a * p + b) * p + c];
    }
  }
  return out;
}

Field convolve(const GreenKernel& kernel, const Field& w, ConvolutionMethod method) {
  require_cover(kernel, w.box());
  if (method == ConvolutionMethod::direct) return convolve_direct(kernel, w);
  return Convolver(kernel, w.box()).apply(w);
}

}  // namespace lkc
