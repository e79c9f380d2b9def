#include "lkc/kernel_cache.hpp"

#include <array>
#include <bit>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "byte_io.hpp"
#include "lkc/field_io.hpp"

namespace lkc {

namespace {

constexpr std::array<char, 8> kKernelMagic = {'L', 'C', 'K', 'E', 'R', 'N', '0', '1'};

std::string hex16(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::span<const unsigned char> as_bytes(const std::string& s) {
  return {reinterpret_cast<const unsigned char*>(s.data()), s.size()};
}

}  // namespace

void write_kernel(std::ostream& out, const GreenKernel& kernel) {
  out.write(kKernelMagic.data(), kKernelMagic.size());
  detail::put_f64(out, kernel.alpha());
  detail::put_u32(out, static_cast<std::uint32_t>(kernel.table_radius()));
  detail::put_u32(out, static_cast<std::uint32_t>(kernel.quadrature().method));
  detail::put_f64(out, kernel.K_alpha());
  for (double v : kernel.table()) detail::put_f64(out, v);
}

GreenKernel read_kernel(std::istream& in) {
  std::array<char, 8> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kKernelMagic) throw FormatError("bad kernel magic");
  const double alpha = detail::get_f64(in);
  const auto radius = detail::get_u32(in);
  const auto tag = detail::get_u32(in);
  const double K = detail::get_f64(in);
  if (!in || radius > 4096 || tag > 1) throw FormatError("bad kernel header");
  const auto side = static_cast<std::size_t>(2 * radius + 1);
  std::vector<double> table(side * side * side);
  for (double& v : table) v = detail::get_f64(in);
  if (!in) throw FormatError("truncated kernel table");
  QuadratureMeta meta;
  meta.method = static_cast<GreenMethod>(tag);
  meta.resolution = 0;
  return GreenKernel(alpha, K, static_cast<int>(radius), std::move(table), meta);
}

std::uint64_t fnv1a64(std::span<const unsigned char> bytes, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string kernel_content_hash(const GreenKernel& kernel) {
  std::ostringstream out;
  write_kernel(out, kernel);
  return hex16(fnv1a64(as_bytes(out.str())));
}

KernelCache::KernelCache(std::filesystem::path directory) : directory_(std::move(directory)) {}

std::filesystem::path KernelCache::path_for(const KernelKey& key) const {
  std::ostringstream id;
  id << std::bit_cast<std::uint64_t>(key.alpha) << ':' << key.table_radius << ':'
     << static_cast<std::uint32_t>(key.method) << ':' << key.resolution;
  return directory_ / ("kernel-" + hex16(fnv1a64(as_bytes(id.str()))) + ".lck");
}

std::optional<GreenKernel> KernelCache::load(const KernelKey& key) const {
  const auto path = path_for(key);
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  GreenKernel kernel = read_kernel(in);
  if (kernel.alpha() != key.alpha || kernel.table_radius() != key.table_radius ||
      kernel.quadrature().method != key.method) {
    throw FormatError("kernel cache entry " + path.string() + " does not match its key");
  }
  QuadratureMeta meta = kernel.quadrature();
  meta.resolution = key.resolution;
  std::vector<double> table(kernel.table().begin(), kernel.table().end());
  return GreenKernel(kernel.alpha(), kernel.K_alpha(), kernel.table_radius(), std::move(table), meta);
}

void KernelCache::store(const KernelKey& key, const GreenKernel& kernel) const {
  std::filesystem::create_directories(directory_);
  const auto path = path_for(key);
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    write_kernel(out, kernel);
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

GreenKernel KernelCache::get_or_build(const KernelKey& key, int threads, bool* was_cached, double tolerance) const {
  if (auto cached = load(key)) {
    if (was_cached != nullptr) *was_cached = true;
    return *std::move(cached);
  }
  GreenOptions options;
  options.method = key.method;
  options.resolution = key.resolution;
  options.threads = threads;
  options.tolerance = tolerance;
  GreenKernel kernel = build_kernel(key.alpha, key.table_radius, options);
  store(key, kernel);
  if (was_cached != nullptr) *was_cached = false;
  return kernel;
}

}  // namespace lkc
