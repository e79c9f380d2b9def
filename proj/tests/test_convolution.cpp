#include <gtest/gtest.h>

#include <thread>

#include "lkc/convolution.hpp"
#include "lkc/rng.hpp"

using namespace lkc;

namespace {

// Plain double sum over all pairs, with min-image wrapping on a torus.
Field brute_force(const GreenKernel& k, const Field& w) {
  const LatticeBox& box = w.box();
  Field out(box);
  for (std::size_t i = 0; i < w.size(); ++i) {
    const Index3 x = box.site(i);
    double acc = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) {
      Index3 d = x - box.site(j);
      if (box.periodic()) {
        for (int a = 0; a < 3; ++a) {
          const int s = box.side();
          d[a] = ((d[a] % s) + s) % s;
          if (d[a] > s / 2) d[a] -= s;
        }
      }
      acc += k(d) * w[j];
    }
    out[i] = acc;
  }
  return out;
}

}  // namespace

TEST(Convolution, DirectMatchesBruteForce) {
  const GreenKernel k = build_kernel(1.0, 6);
  Rng rng(1);
  for (const LatticeBox& box : {LatticeBox(3), LatticeBox(3, Boundary::periodic), LatticeBox::even_torus(3)}) {
    const Field w = normal_field(box, rng);
    const Field oracle = brute_force(k, w);
    const Field got = convolve(k, w, ConvolutionMethod::direct);
    for (std::size_t i = 0; i < w.size(); ++i) EXPECT_NEAR(got[i], oracle[i], 1e-12);
  }
}

TEST(Convolution, FftMatchesDirect) {
  const GreenKernel k = build_kernel(1.0, 8);
  Rng rng(2);
  for (const LatticeBox& box : {LatticeBox(4), LatticeBox(4, Boundary::periodic), LatticeBox::even_torus(4)}) {
    for (int t = 0; t < 5; ++t) {
      const Field w = random_field(box, rng, -1.0, 1.0);
      const Field a = convolve(k, w, ConvolutionMethod::direct);
      const Field b = convolve(k, w, ConvolutionMethod::fft);
      for (std::size_t i = 0; i < w.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-12);
    }
  }
}

TEST(Convolution, DeltaReproducesKernel) {
  const GreenKernel k = build_kernel(2.5, 4);
  const LatticeBox box(2);
  const Field r = Convolver(k, box).apply(Field::delta(box, {0, 0, 0}));
  for (std::size_t i = 0; i < r.size(); ++i) EXPECT_NEAR(r[i], k(box.site(i)), 1e-13);
}

TEST(Convolution, KernelMustCoverBox) {
  const GreenKernel k = build_kernel(1.0, 3);
  EXPECT_THROW(Convolver(k, LatticeBox(2)), std::invalid_argument);
  EXPECT_NO_THROW(Convolver(k, LatticeBox(3, Boundary::periodic)));
  EXPECT_EQ(fft_friendly_size(17), 18);
  EXPECT_EQ(fft_friendly_size(64), 64);
}

TEST(Convolution, ApplyIsThreadSafe) {
  const GreenKernel k = build_kernel(1.0, 10);
  const LatticeBox box(5);
  const Convolver conv(k, box);
  Rng rng(3);
  const Field w = normal_field(box, rng);
  const Field ref = conv.apply(w);
  std::vector<Field> results(4);
  std::vector<std::thread> pool;
  for (int t = 0; t < 4; ++t) pool.emplace_back([&, t] { results[t] = conv.apply(w); });
  for (auto& th : pool) th.join();
  for (const Field& r : results) EXPECT_EQ(r, ref);
}
