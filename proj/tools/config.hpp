#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lkc/green.hpp"
#include "lkc/solver.hpp"
#include "lkc/verify.hpp"

namespace lkc::cli {

/// Parse or validation failure, anchored to a line of the config text.
/// line() is 0 when the problem comes from a default value.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string_view source, int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

struct KernelSection {
  /// Zero picks the smallest radius that covers the box.
  int table_radius = 0;
  GreenMethod method = GreenMethod::heat_kernel;
  int resolution = 64;
  double tolerance = 1e-9;
  std::string cache_dir = "kernel-cache";

  friend bool operator==(const KernelSection&, const KernelSection&) = default;
};

enum class FieldFormat { text, binary };

struct OutputSection {
  std::string directory = "out";
  FieldFormat field_format = FieldFormat::text;

  friend bool operator==(const OutputSection&, const OutputSection&) = default;
};

struct SweepSection {
  std::string param = "b";
  std::vector<double> values{0.0, 0.5, 1.0};

  friend bool operator==(const SweepSection&, const SweepSection&) = default;
};

/// Everything one lkc invocation needs. The single seed feeds the solver and
/// the verify suite; threads feeds kernel construction and the suite.
struct RunConfig {
  std::uint64_t seed = 42;
  int threads = 1;
  ProblemSpec problem;
  SolveConfig solver;
  std::string initial_file;
  KernelSection kernel;
  OutputSection output;
  VerifyOptions verify;
  SweepSection sweep;

  /// Copies seed and threads into the solver and verify blocks.
  void sync();

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

RunConfig default_config();
RunConfig parse_config(std::string_view text, std::string_view source = "<config>");
RunConfig load_config(const std::filesystem::path& path);
/// Every key with its current value; parse_config inverts it exactly.
std::string serialize_config(const RunConfig& config);

/// Table radius the config's kernel block resolves to for `box`.
int resolved_table_radius(const KernelSection& kernel, const LatticeBox& box);

}  // namespace lkc::cli
