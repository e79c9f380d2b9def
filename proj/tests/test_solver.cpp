#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "lkc/rng.hpp"
#include "lkc/solver.hpp"

using namespace lkc;

namespace {

ProblemSpec coercive_spec(int radius) {
  ProblemSpec spec;
  spec.box = LatticeBox(radius);
  spec.potential = PotentialSpec::coercive(1.0, {0, 0, 0}, 1.0, 2.0);
  return spec;
}

}  // namespace

TEST(Solver, ConvergesWithSmallResidualOnTheManifold) {
  const ProblemSpec spec = coercive_spec(4);
  const GreenKernel k = build_kernel(1.0, 8);
  const EnergyModel model(spec, k);
  const SolveReport r = solve_ground_state(model);
  ASSERT_TRUE(r.converged) << r.status;
  EXPECT_TRUE(r.ok());
  EXPECT_LT(r.residual, 1e-8);
  EXPECT_LT(r.nehari_defect, 1e-8);
  EXPECT_LT(r.euler_lagrange, 1e-6);
  EXPECT_GT(r.energy, 0.0);
  // The report agrees with an independent evaluation of the solution.
  EXPECT_NEAR(model.energy(r.solution), r.energy, 1e-10 * r.energy);
  EXPECT_NEAR(model.h_norm(r.solution), r.norm, 1e-10 * r.norm);
  // V >= 1 gives |u|_2 <= ||u||.
  EXPECT_NEAR(r.l2_over_h, lp_norm(r.solution, 2.0) / r.norm, 1e-12);
  EXPECT_LE(r.l2_over_h, 1.0);
  EXPECT_EQ(r.energy_history.size(), r.residual_history.size());
  EXPECT_EQ(r.energy_history.size(), static_cast<std::size_t>(r.iterations) + 1);
}

TEST(Solver, IsDeterministicAndStartIndependent) {
  const ProblemSpec spec = coercive_spec(3);
  const GreenKernel k = build_kernel(1.0, 6);
  const EnergyModel model(spec, k);
  SolveConfig cfg;
  cfg.initial = InitialGuess::random;
  cfg.seed = 11;
  const SolveReport a = solve_ground_state(model, cfg);
  const SolveReport b = solve_ground_state(model, cfg);
  EXPECT_EQ(a.solution, b.solution);
  EXPECT_EQ(a.energy, b.energy);
  cfg.seed = 12;
  const SolveReport c = solve_ground_state(model, cfg);
  ASSERT_TRUE(a.converged && c.converged);
  EXPECT_NEAR(a.energy, c.energy, 1e-6 * a.energy);
}

TEST(Solver, ReportListsEveryKey) {
  const ProblemSpec spec = coercive_spec(2);
  const GreenKernel k = build_kernel(1.0, 4);
  const SolveReport r = solve_ground_state(spec, k);
  std::ostringstream out;
  write_report(out, r);
  for (const char* key : {"status", "energy", "residual_l2", "nehari_defect", "euler_lagrange_max", "norm_h", "l2_over_h",
                          "eta_estimate", "check.monotone_energy", "check.energy_above_floor"}) {
    EXPECT_NE(out.str().find(key), std::string::npos) << key;
  }
  std::ostringstream csv;
  write_history_csv(csv, r);
  EXPECT_EQ(csv.str().rfind("iteration,energy,residual,s_u\n", 0), 0u);
}

TEST(Solver, IterationCapIsReportedAsUnconverged) {
  const ProblemSpec spec = coercive_spec(3);
  const GreenKernel k = build_kernel(1.0, 6);
  SolveConfig cfg;
  cfg.max_iterations = 1;
  const SolveReport r = solve_ground_state(spec, k, cfg);
  EXPECT_FALSE(r.converged);
  EXPECT_FALSE(r.ok());
  EXPECT_EQ(r.status, "max_iterations");
}

TEST(Solver, RejectsZeroStart) {
  const ProblemSpec spec = coercive_spec(2);
  const GreenKernel k = build_kernel(1.0, 4);
  SolveConfig cfg;
  cfg.initial_field = Field(spec.box);
  EXPECT_THROW(solve_ground_state(spec, k, cfg), std::invalid_argument);
}

TEST(Solver, CanonicalShiftMovesPeakTowardOrigin) {
  const LatticeBox box = LatticeBox::even_torus(4);
  const Field u = Field::delta(box, {3, -2, 1});
  const Index3 s = canonical_shift(u, 2);
  const Field v = translate(u, s);
  EXPECT_EQ(s.x1 % 2, 0);
  EXPECT_EQ(s.x2 % 2, 0);
  EXPECT_EQ(s.x3 % 2, 0);
  Index3 peak{};
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 1.0) peak = box.site(i);
  }
  // The delta sits within one period of the origin after the shift.
  for (int a = 0; a < 3; ++a) EXPECT_LE(std::abs(peak[a]), 1);
  EXPECT_EQ(canonical_shift(Field::delta(LatticeBox(3), {2, 2, 2}), 1), (Index3{0, 0, 0}));
}

TEST(Solver, PeriodicTorusSolutionIsCanonical) {
  ProblemSpec spec;
  spec.box = LatticeBox::even_torus(3);
  spec.potential = PotentialSpec::periodic(1.0, 2, {1.0, 2.0, 2.0, 3.0, 2.0, 3.0, 3.0, 4.0});
  const GreenKernel k = build_kernel(1.0, GreenKernel::required_radius(spec.box));
  const SolveReport r = solve_ground_state(spec, k);
  ASSERT_TRUE(r.converged) << r.status;
  // The saved field is a lattice translate of the iterate, so J is unchanged.
  const EnergyModel model(spec, k);
  EXPECT_NEAR(model.energy(r.solution), r.energy, 1e-10 * r.energy);
}

TEST(PotentialMinimum, PrefersOrigin) {
  const PotentialSpec v = PotentialSpec::coercive(1.0, {1, 0, 0}, 1.0, 2.0);
  EXPECT_EQ(potential_minimum(v, LatticeBox(3)), (Index3{1, 0, 0}));
  EXPECT_EQ(potential_minimum(PotentialSpec::constant(2.0), LatticeBox(3)), (Index3{0, 0, 0}));
}
