#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "lkc/nehari.hpp"
#include "lkc/rng.hpp"

using namespace lkc;

namespace {

ProblemSpec small_spec() {
  ProblemSpec spec;
  spec.box = LatticeBox(3);
  spec.potential = PotentialSpec::coercive(1.0, {0, 0, 0}, 1.0, 2.0);
  return spec;
}

FiberCoefficients random_coefficients(Rng& rng) {
  // Log-uniform over several decades so the root lands anywhere.
  auto lu = [&](double lo, double hi) { return std::exp(rng.uniform(std::log(lo), std::log(hi))); };
  return {lu(1e-3, 1e3), lu(1e-3, 1e3), lu(1e-3, 1e3), 0.0};
}

}  // namespace

TEST(NehariScale, ClosedFormWithoutKirchhoffTerm) {
  Rng rng(1);
  for (int t = 0; t < 100; ++t) {
    const FiberCoefficients c = random_coefficients(rng);
    const double p = rng.uniform(2.1, 6.0);
    const double oracle = std::pow(c.normH2 / c.D, 1.0 / (2.0 * p - 2.0));
    EXPECT_NEAR(nehari_scale(c, 0.0, p), oracle, 1e-12 * oracle);
  }
}

TEST(NehariScale, ClosedFormForCubicPower) {
  // p = 3: N + b A^2 s^2 - D s^4 = 0 is a quadratic in s^2.
  Rng rng(2);
  for (int t = 0; t < 100; ++t) {
    const FiberCoefficients c = random_coefficients(rng);
    const double b = std::exp(rng.uniform(std::log(1e-3), std::log(1e3)));
    const double bA2 = b * c.A * c.A;
    const double s2 = (bA2 + std::sqrt(bA2 * bA2 + 4.0 * c.D * c.normH2)) / (2.0 * c.D);
    const double oracle = std::sqrt(s2);
    EXPECT_NEAR(nehari_scale(c, b, 3.0), oracle, 1e-12 * oracle);
  }
}

TEST(NehariScale, RejectsDegenerateInput) {
  EXPECT_THROW(nehari_scale({0.0, 1.0, 1.0, 1.0}, 1.0, 3.0), NehariError);
  EXPECT_THROW(nehari_scale({1.0, 1.0, 0.0, 0.0}, 1.0, 3.0), NehariError);
  EXPECT_THROW(nehari_scale({1.0, 1.0, 1.0, 1.0}, 1.0, 2.0), NehariError);
}

TEST(NehariEnergy, AgreesWithFiberPolynomialAtTheRoot) {
  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    FiberCoefficients c = random_coefficients(rng);
    c.B = c.D / 3.0;
    const double s = nehari_scale(c, 0.5, 3.0);
    const double direct = fiber_energy(c, 0.5, 3.0, s);
    EXPECT_NEAR(nehari_energy(c, 3.0, s), direct, 1e-9 * std::abs(direct));
    // s is the maximiser of the fiber map.
    EXPECT_GT(direct, fiber_energy(c, 0.5, 3.0, 0.99 * s));
    EXPECT_GT(direct, fiber_energy(c, 0.5, 3.0, 1.01 * s));
  }
}

TEST(NehariProjection, LandsOnTheManifold) {
  const ProblemSpec spec = small_spec();
  const GreenKernel k = build_kernel(1.0, 6);
  const EnergyModel model(spec, k);
  Rng rng(4);
  for (int t = 0; t < 5; ++t) {
    const Field u = random_field(spec.box, rng, -1.0, 1.0);
    double s = 0.0;
    const Field m = project_to_nehari(model, u, &s);
    // <J'(m), m> = ||m||^2 + b A^2 - D; D is the largest of the three terms.
    EXPECT_NEAR(model.pairing(m, m) / model.fiber_coefficients(m).D, 0.0, 1e-12);
    EXPECT_NEAR(s * model.h_norm(u), model.h_norm(m), 1e-12 * model.h_norm(m));
    const Field w = sphere_inverse(model, m);
    EXPECT_NEAR(model.h_norm(w), 1.0, 1e-14);
  }
}

TEST(ReducedGradient, MatchesFiniteDifferencesOnTheSphere) {
  const ProblemSpec spec = small_spec();
  const GreenKernel k = build_kernel(1.0, 6);
  const EnergyModel model(spec, k);
  Rng rng(5);
  const Field w = sphere_inverse(model, random_field(spec.box, rng));
  const ReducedState st = reduced_state(model, w);
  const ReducedGradient rg = reduced_gradient(model, st);
  for (int t = 0; t < 3; ++t) {
    Field z = normal_field(spec.box, rng);
    axpy(-model.h_inner(z, w), w, z);  // tangent at w
    z *= 1.0 / model.h_norm(z);
    const double h = 1e-5;
    auto psi = [&](double e) { return reduced_state(model, sphere_inverse(model, w + e * z)).psi; };
    const double fd = (psi(h) - psi(-h)) / (2.0 * h);
    const double an = model.h_inner(rg.r, z);
    EXPECT_NEAR(an, fd, 1e-5 * std::max(1.0, std::abs(fd)));
  }
  EXPECT_GT(rg.h_residual, 0.0);
}

TEST(MountainPassLevel, IsTheMinimumOfRayMaxima) {
  const ProblemSpec spec = small_spec();
  const GreenKernel k = build_kernel(1.0, 6);
  const EnergyModel model(spec, k);
  Rng rng(6);
  std::vector<Field> samples;
  for (int t = 0; t < 4; ++t) samples.push_back(random_field(spec.box, rng));
  const double level = mountain_pass_level_check(model, samples);
  double oracle = INFINITY;
  for (const Field& u : samples) {
    double s = 0.0;
    const double top = model.energy(project_to_nehari(model, u, &s));
    oracle = std::min(oracle, top);
    // Brute-force scan of the ray never beats the Nehari point.
    for (int i = 1; i <= 400; ++i) EXPECT_LE(model.energy((i / 200.0 * s) * u), top + 1e-9 * std::abs(top));
  }
  EXPECT_NEAR(level, oracle, 1e-12 * std::abs(oracle));
}
