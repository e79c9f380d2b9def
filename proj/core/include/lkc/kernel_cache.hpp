#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>

#include "lkc/green.hpp"

namespace lkc {

// Kernel file (little endian):
//   "LCKERN01", f64 alpha, u32 table_radius, u32 method tag, f64 K_alpha,
//   (2m+1)^3 f64 table values in field order.

void write_kernel(std::ostream& out, const GreenKernel& kernel);
GreenKernel read_kernel(std::istream& in);

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::span<const unsigned char> bytes, std::uint64_t seed = 0xcbf29ce484222325ULL);
/// FNV-1a over the serialized kernel bytes, as 16 hex digits.
std::string kernel_content_hash(const GreenKernel& kernel);

struct KernelKey {
  double alpha = 1.0;
  int table_radius = 0;
  GreenMethod method = GreenMethod::heat_kernel;
  int resolution = 64;
};

/// Directory of kernel files named by a hash of the key.
class KernelCache {
 public:
  explicit KernelCache(std::filesystem::path directory);

  const std::filesystem::path& directory() const { return directory_; }
  std::filesystem::path path_for(const KernelKey& key) const;

  /// Loads the kernel for `key` if present and consistent with it.
  std::optional<GreenKernel> load(const KernelKey& key) const;
  void store(const KernelKey& key, const GreenKernel& kernel) const;

  /// Loads or builds (then stores). Sets *was_cached accordingly. A fresh
  /// build throws QuadratureError when its error estimate misses `tolerance`;
  /// the file format keeps no estimate, so cached entries are trusted.
  GreenKernel get_or_build(const KernelKey& key, int threads = 1, bool* was_cached = nullptr,
                           double tolerance = 1e-9) const;

 private:
  std::filesystem::path directory_;
};

}  // namespace lkc
