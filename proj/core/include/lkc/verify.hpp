#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "lkc/solver.hpp"

namespace lkc {

/// Outcome of one sampled property check. Passing is evidence on finitely
/// many samples, never a proof.
struct PropertyReport {
  std::string name;
  std::string anchor;  ///< the mathematical statement being sampled
  int samples = 0;
  bool pass = false;
  std::map<std::string, double> measured;
  double tolerance = 0.0;
  /// Description of the offending input when pass is false.
  std::string witness;

  double at(const std::string& key) const;
  /// "k1=v1;k2=v2" in key order.
  std::string measured_string() const;
};

struct VerifyOptions {
  std::uint64_t seed = 42;
  int threads = 1;

  int mountain_pass_trials = 100;
  int mountain_pass_max_halvings = 60;

  int hls_trials = 200;
  std::vector<int> hls_radii{4, 6, 8};
  double hls_tolerance = 0.05;

  int fiber_trials = 20;
  int fiber_grid = 50;
  double fiber_tolerance = 1e-10;

  int level_samples = 20;
  double level_tolerance = 1e-8;
  double segment_tolerance = 1e-6;

  std::vector<int> box_radii{4, 6, 8, 10};
  double box_tolerance = 1e-3;

  double translation_tolerance = 1e-10;
  double symmetry_tolerance = 1e-4;

  /// Throws std::invalid_argument for empty or nonsensical settings.
  void validate() const;

  friend bool operator==(const VerifyOptions&, const VerifyOptions&) = default;
};

/// Samples J on ||u|| = rho for rho = 2^-k, k = 0, 1, ..., until the minimum
/// over the random directions is positive, then doubles t along one direction
/// until J(t w) < 0. Reports sigma, rho, the sampled edge rho_edge (smallest
/// positive root of J(t w) over the directions), ||e|| and J(e).
PropertyReport check_mountain_pass_geometry(const EnergyModel& model, int trials, std::uint64_t seed,
                                            int max_halvings = 60);

/// Empirical sup of sum (R * u) v / (|u|_r |v|_r), r = 6/(3 + alpha), over
/// random nonnegative pairs on dirichlet boxes of the given radii; the kernel
/// must cover the largest box. Passes iff the sups agree within `tolerance`
/// relative to their maximum and the ratio is scale invariant.
PropertyReport check_hls(const GreenKernel& kernel, std::span<const int> radii, int trials, std::uint64_t seed,
                         double tolerance = 0.05);

/// For g(t) = I(t u) on a grid t in [1/20, 4]: 1/4 t g'(t) - g(t) positive and
/// increasing, g(t) >= t^theta g(1) for t >= 1, and g(t) = t^{2p} g(1).
PropertyReport check_fiber_monotonicity(const EnergyModel& model, int trials, int grid, std::uint64_t seed,
                                        double tolerance = 1e-10);

/// Compares the solved level c with ray maxima max_t J(t u) (random and
/// perturbed-ground-state samples), with the ray through the ground state and
/// with the maximum along the straight segment from 0 to a negative-energy e.
PropertyReport check_level_identity(const EnergyModel& model, const SolveReport& report, int samples,
                                    std::uint64_t seed, double tolerance = 1e-8, double segment_tolerance = 1e-6);

/// Solves on dirichlet boxes of the given radii with everything else taken
/// from `spec_template`. Passes iff every solve converges, c(n) does not
/// increase with n and, for coercive V, the last relative gap is below
/// `tolerance`. Measured keys: c_<n>, gap_<n>, final_gap.
PropertyReport check_box_convergence(const ProblemSpec& spec_template, const GreenKernel& kernel,
                                     std::span<const int> radii, const SolveConfig& config,
                                     double tolerance = 1e-3);

/// Periodic V on a torus: |J(u shifted by tau e_j) - J(u)| for j = 1, 2, 3.
/// Otherwise: octahedral residual |u - avg u| / |u| about the minimum of V.
PropertyReport check_symmetry_and_translation(const EnergyModel& model, const SolveReport& report,
                                              double translation_tolerance = 1e-10,
                                              double symmetry_tolerance = 1e-4);

/// Positivity and lattice symmetry of the kernel table.
PropertyReport check_kernel(const GreenKernel& kernel);

/// Table radius a kernel needs for run_verify_suite on this problem.
int suite_table_radius(const ProblemSpec& spec, const VerifyOptions& options);

/// All checks above for one solved problem. The kernel must cover the problem
/// box, the HLS boxes and the box-convergence boxes. Checks run concurrently
/// when options.threads > 1, each with its own RNG stream.
std::vector<PropertyReport> run_verify_suite(const ProblemSpec& spec, const GreenKernel& kernel,
                                             const SolveReport& report, const VerifyOptions& options,
                                             const SolveConfig& solve_config = {});

bool all_pass(std::span<const PropertyReport> reports);

/// CSV name,anchor,samples,pass,measured,tolerance after a commented header.
void write_suite_csv(std::ostream& out, std::span<const PropertyReport> reports);
/// One line per check, plus witnesses for failures.
void write_suite_summary(std::ostream& out, std::span<const PropertyReport> reports);

}  // namespace lkc
