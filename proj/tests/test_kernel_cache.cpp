#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "lkc/field_io.hpp"
#include "lkc/kernel_cache.hpp"

using namespace lkc;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const char* name) {
  const fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  return dir;
}

std::string bytes_of(const GreenKernel& k) {
  std::ostringstream s;
  write_kernel(s, k);
  return s.str();
}

}  // namespace

TEST(KernelFile, RoundTripPreservesBytes) {
  const GreenKernel k = build_kernel(1.5, 3);
  std::stringstream s;
  write_kernel(s, k);
  const GreenKernel back = read_kernel(s);
  EXPECT_EQ(back.alpha(), k.alpha());
  EXPECT_EQ(back.K_alpha(), k.K_alpha());
  EXPECT_EQ(back.table_radius(), 3);
  EXPECT_EQ(bytes_of(back), bytes_of(k));
  EXPECT_EQ(kernel_content_hash(back), kernel_content_hash(k));
}

TEST(KernelFile, RejectsBadInput) {
  std::stringstream junk("NOTAKERNEL");
  EXPECT_THROW(read_kernel(junk), FormatError);
  std::string bytes = bytes_of(build_kernel(1.0, 1));
  bytes.resize(bytes.size() - 8);
  std::stringstream truncated(bytes);
  EXPECT_THROW(read_kernel(truncated), FormatError);
}

TEST(Fnv1a, KnownVectors) {
  const std::string a = "a";
  EXPECT_EQ(fnv1a64({}), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64({reinterpret_cast<const unsigned char*>(a.data()), 1}), 0xaf63dc4c8601ec8cULL);
}

TEST(KernelCache, SecondLookupHitsAndMatchesBytes) {
  const fs::path dir = fresh_dir("lkc_cache_test");
  const KernelCache cache(dir);
  const KernelKey key{1.0, 4, GreenMethod::heat_kernel, 64};
  bool cached = true;
  const GreenKernel first = cache.get_or_build(key, 2, &cached);
  EXPECT_FALSE(cached);
  EXPECT_TRUE(fs::exists(cache.path_for(key)));
  const GreenKernel second = cache.get_or_build(key, 2, &cached);
  EXPECT_TRUE(cached);
  EXPECT_EQ(bytes_of(first), bytes_of(second));

  // Distinct keys get distinct files.
  EXPECT_NE(cache.path_for(key), cache.path_for({1.5, 4, GreenMethod::heat_kernel, 64}));
  EXPECT_NE(cache.path_for(key), cache.path_for({1.0, 5, GreenMethod::heat_kernel, 64}));
  fs::remove_all(dir);
}

TEST(KernelCache, MismatchedEntryIsRejected) {
  const fs::path dir = fresh_dir("lkc_cache_mismatch");
  const KernelCache cache(dir);
  const KernelKey key{1.0, 2, GreenMethod::heat_kernel, 64};
  fs::create_directories(dir);
  {
    std::ofstream out(cache.path_for(key), std::ios::binary);
    write_kernel(out, build_kernel(2.0, 2));
  }
  EXPECT_THROW(cache.load(key), FormatError);
  fs::remove_all(dir);
}
