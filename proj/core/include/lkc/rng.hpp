#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "lkc/lattice.hpp"

namespace lkc {

std::uint64_t splitmix64(std::uint64_t x);

/// Seed of the named stream derived from a master seed. Independent checks
/// draw from independent streams so adding one does not perturb the others.
std::uint64_t stream_seed(std::uint64_t master, std::string_view name);

/// mt19937_64 with portable conversions to real numbers (the standard
/// distributions are implementation defined, these are not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t master, std::string_view stream) : engine_(stream_seed(master, stream)) {}

  std::uint64_t bits() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal by Box-Muller.
  double normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Field with iid uniform values on [lo, hi).
Field random_field(const LatticeBox& box, Rng& rng, double lo = 0.0, double hi = 1.0);
/// Field with iid standard normal values.
Field normal_field(const LatticeBox& box, Rng& rng);

}  // namespace lkc
