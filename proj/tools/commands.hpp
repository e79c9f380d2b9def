#pragma once

#include <filesystem>
#include <iosfwd>
#include <string_view>

#include "config.hpp"

namespace lkc::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_usage = 1,
  exit_quadrature = 2,
  exit_no_convergence = 3,
  exit_verify_failed = 4,
};

/// Fresh <root>/run/<UTC timestamp>, with a -N suffix if that already exists.
std::filesystem::path make_run_dir(const std::filesystem::path& root);

/// Kernel for (alpha, table_radius) from the cache named in the config,
/// building and storing it on a miss.
GreenKernel obtain_kernel(const RunConfig& config, double alpha, int table_radius, bool* was_cached = nullptr);

// Each command writes its artifacts into run_dir (which must exist), prints
// a summary to `out` and returns an ExitCode. Exceptions propagate; run_command
// maps them to exit codes.
int cmd_green(const RunConfig& config, const std::filesystem::path& run_dir, std::ostream& out);
int cmd_solve(const RunConfig& config, const std::filesystem::path& run_dir, std::ostream& out);
int cmd_verify(const RunConfig& config, const std::filesystem::path& run_dir, std::ostream& out);
int cmd_sweep(const RunConfig& config, const std::filesystem::path& run_dir, std::ostream& out);

/// Creates the run directory, writes config.snapshot, runs `command` and
/// turns failures into exit codes with a message on `err`.
int run_command(std::string_view command, const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace lkc::cli
