#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lkc/nehari.hpp"

namespace lkc {

enum class InitialGuess { gaussian_bump, random, file };

std::string_view to_string(InitialGuess kind);
InitialGuess initial_guess_from_string(std::string_view name);

struct SolveConfig {
  int max_iterations = 2000;
  /// Stop when the l2 norm of the gradient field at m(w) falls below this.
  double gradient_tolerance = 1e-8;
  double backtrack_factor = 0.5;
  double sufficient_decrease = 1e-4;
  int max_backtracks = 60;
  double nehari_root_tolerance = 1e-10;
  double cg_tolerance = 1e-12;
  std::uint64_t seed = 42;
  InitialGuess initial = InitialGuess::gaussian_bump;
  /// Width of the gaussian bump; zero picks max(1, radius/4).
  double bump_width = 0.0;
  /// Starting field for InitialGuess::file (or any kind, when set).
  std::optional<Field> initial_field;
  /// Random unit directions used for the eta estimate, besides the solution.
  int eta_samples = 20;

  friend bool operator==(const SolveConfig&, const SolveConfig&) = default;
};

struct InvariantCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SolveReport {
  Field solution;
  double energy = 0.0;
  double residual = 0.0;         ///< l2 norm of the gradient field
  double h_residual = 0.0;       ///< H-dual norm via the CG representer
  double nehari_defect = 0.0;    ///< |<J'(u),u>| / ||u||^2
  double euler_lagrange = 0.0;   ///< max |gradient| / max |u|
  double norm = 0.0;             ///< ||u||
  double l2_over_h = 0.0;        ///< |u|_2 / ||u||, the embedding ratio seen at the solution
  double gradient_energy = 0.0;  ///< int |grad u|^2
  double eta_estimate = 0.0;
  int iterations = 0;
  bool converged = false;
  std::string status;
  std::vector<double> energy_history;
  std::vector<double> residual_history;
  std::vector<double> s_history;
  std::vector<InvariantCheck> invariants;
  /// Translation applied to the saved field (periodic boxes only).
  Index3 canonical_shift{};

  /// Converged and every in-solve invariant holds.
  bool ok() const;
};

/// Projected descent of Psi = J o m on the unit sphere of H: the step is the
/// tangential H-gradient, the retraction is normalisation, the step length
/// comes from Barzilai-Borwein with Armijo backtracking. Throws
/// std::invalid_argument for an unusable start and std::runtime_error when
/// the line search cannot make progress.
SolveReport solve_ground_state(const EnergyModel& model, const SolveConfig& config = {});
SolveReport solve_ground_state(const ProblemSpec& spec, const GreenKernel& kernel, const SolveConfig& config = {});

/// Starting field of the requested kind (before normalisation).
Field initial_field(const EnergyModel& model, const SolveConfig& config);

/// Site of the box where V is smallest, ties broken toward the origin.
Index3 potential_minimum(const PotentialSpec& V, const LatticeBox& box);

/// Largest multiple of `period` on each axis that moves the peak of |u|
/// closest to the origin; zero on a dirichlet box.
Index3 canonical_shift(const Field& u, int period);

/// eta = (max_w D(w))^{-1/(2p-2)} over unit directions w: every Nehari point
/// has ||u|| >= eta when the maximum is taken over all w.
double estimate_eta(const EnergyModel& model, std::span<const Field> unit_directions);

/// Human-readable "key = value" report.
void write_report(std::ostream& out, const SolveReport& report);
/// CSV iteration,energy,residual,s_u.
void write_history_csv(std::ostream& out, const SolveReport& report);

}  // namespace lkc
