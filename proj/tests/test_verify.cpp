#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <sstream>

#include "lkc/verify.hpp"

using namespace lkc;

namespace {

ProblemSpec coercive_spec(int radius) {
  ProblemSpec spec;
  spec.box = LatticeBox(radius);
  spec.potential = PotentialSpec::coercive(1.0, {0, 0, 0}, 1.0, 2.0);
  return spec;
}

}  // namespace

TEST(MountainPass, GeometryHoldsAndEdgeShrinksWithStrongerNonlinearity) {
  ProblemSpec spec = coercive_spec(3);
  const GreenKernel k = build_kernel(1.0, 6);
  const PropertyReport weak = check_mountain_pass_geometry(EnergyModel(spec, k), 30, 1);
  EXPECT_TRUE(weak.pass) << weak.witness;
  EXPECT_GT(weak.at("sigma"), 0.0);
  EXPECT_LT(weak.at("J_e"), 0.0);
  EXPECT_GT(weak.at("e_norm"), weak.at("rho"));

  // J(t w) = t^2/2 + ... - c^2 t^{2p} B / 2: the positive root moves in by
  // the factor c^{-2/(2p-2)} when b = 0.
  spec.b = 0.0;
  const PropertyReport c1 = check_mountain_pass_geometry(EnergyModel(spec, k), 30, 2);
  spec.nonlinearity.c = 10.0;
  const PropertyReport c10 = check_mountain_pass_geometry(EnergyModel(spec, k), 30, 2);
  ASSERT_TRUE(c1.pass && c10.pass);
  EXPECT_NEAR(c10.at("rho_edge") / c1.at("rho_edge"), std::pow(10.0, -0.5), 1e-6);
}

TEST(Hls, RatiosAreStableAcrossBoxes) {
  const GreenKernel k = build_kernel(1.0, 12);
  const std::array<int, 2> radii{3, 6};
  const PropertyReport r = check_hls(k, radii, 40, 3);
  EXPECT_TRUE(r.pass) << r.witness;
  // A delta pair gives R(0) exactly, so the sup is at least that.
  EXPECT_GE(r.at("constant"), r.at("delta_ratio") * (1.0 - 1e-12));
  EXPECT_LT(r.at("homogeneity"), 1e-12);
}

TEST(Fiber, MonotonicityHolds) {
  const ProblemSpec spec = coercive_spec(3);
  const GreenKernel k = build_kernel(1.0, 6);
  const PropertyReport r = check_fiber_monotonicity(EnergyModel(spec, k), 5, 30, 4);
  EXPECT_TRUE(r.pass) << r.witness;
  EXPECT_LT(r.at("identity_error"), 1e-10);
  EXPECT_GT(r.at("min_h_scaled"), 0.0);
}

TEST(LevelIdentity, SolvedLevelIsTheMinimax) {
  const ProblemSpec spec = coercive_spec(3);
  const GreenKernel k = build_kernel(1.0, 6);
  const EnergyModel model(spec, k);
  const SolveReport sol = solve_ground_state(model);
  ASSERT_TRUE(sol.converged);
  const PropertyReport r = check_level_identity(model, sol, 6, 5);
  EXPECT_TRUE(r.pass) << r.witness;
  EXPECT_GE(r.at("min_ray_max"), r.at("c") * (1.0 - 1e-8));
}

TEST(BoxConvergence, LevelsDecreaseWithTheBox) {
  ProblemSpec spec = coercive_spec(2);
  const GreenKernel k = build_kernel(1.0, 12);
  const std::array<int, 3> radii{2, 4, 6};
  // Boxes this small are far from the limit, so only the ordering is tight.
  const PropertyReport r = check_box_convergence(spec, k, radii, SolveConfig{}, 0.1);
  EXPECT_TRUE(r.pass) << r.witness;
  EXPECT_LE(r.at("c_4"), r.at("c_2"));
  EXPECT_LE(r.at("c_6"), r.at("c_4"));
}

TEST(Symmetry, OctahedralForCentredCoerciveProblem) {
  const ProblemSpec spec = coercive_spec(3);
  const GreenKernel k = build_kernel(1.0, 6);
  const EnergyModel model(spec, k);
  const SolveReport sol = solve_ground_state(model);
  const PropertyReport r = check_symmetry_and_translation(model, sol);
  EXPECT_TRUE(r.pass) << r.witness;
  EXPECT_EQ(r.at("applicable"), 1.0);
  EXPECT_LT(r.at("octahedral_residual"), 1e-4);
}

TEST(Symmetry, TranslationOnEvenTorus) {
  ProblemSpec spec;
  spec.box = LatticeBox::even_torus(3);
  spec.potential = PotentialSpec::periodic(1.0, 2, {1.0, 2.0, 2.0, 3.0, 2.0, 3.0, 3.0, 4.0});
  const GreenKernel k = build_kernel(1.0, GreenKernel::required_radius(spec.box));
  const EnergyModel model(spec, k);
  const SolveReport sol = solve_ground_state(model);
  const PropertyReport r = check_symmetry_and_translation(model, sol);
  EXPECT_TRUE(r.pass) << r.witness;
  EXPECT_LT(r.at("max_dJ"), 1e-10);
}

TEST(KernelCheck, CorruptedTableFails) {
  const GreenKernel k = build_kernel(1.0, 4);
  EXPECT_TRUE(check_kernel(k).pass);
  std::vector<double> table(k.table().begin(), k.table().end());
  table[k.offset({2, 1, 0})] *= 1.5;  // breaks the lattice symmetry
  const GreenKernel bad(k.alpha(), k.K_alpha(), k.table_radius(), table, k.quadrature());
  const PropertyReport r = check_kernel(bad);
  EXPECT_FALSE(r.pass);
  EXPECT_FALSE(r.witness.empty());
}

TEST(VerifyOptions, RejectsEmptySettings) {
  VerifyOptions o;
  EXPECT_NO_THROW(o.validate());
  o.hls_trials = 0;
  EXPECT_THROW(o.validate(), std::invalid_argument);
  o = VerifyOptions{};
  o.box_radii.clear();
  EXPECT_THROW(o.validate(), std::invalid_argument);
  o = VerifyOptions{};
  o.fiber_grid = 1;
  EXPECT_THROW(o.validate(), std::invalid_argument);
}

TEST(Suite, CsvCarriesEvidenceHeader) {
  PropertyReport a;
  a.name = "x";
  a.anchor = "statement";
  a.samples = 3;
  a.pass = true;
  a.measured = {{"b", 2.0}, {"a", 1.0}};
  EXPECT_EQ(a.measured_string(), "a=1;b=2");
  EXPECT_THROW(a.at("missing"), std::out_of_range);
  std::ostringstream out;
  const std::vector<PropertyReport> reps{a};
  write_suite_csv(out, reps);
  EXPECT_EQ(out.str().rfind("# sampled property checks on finite data: evidence, not proof\n", 0), 0u);
  EXPECT_NE(out.str().find("name,anchor,samples,pass,measured,tolerance"), std::string::npos);
  EXPECT_TRUE(all_pass(reps));
}
