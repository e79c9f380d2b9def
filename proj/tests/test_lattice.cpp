#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

#include "lkc/lattice.hpp"
#include "lkc/rng.hpp"

using namespace lkc;

namespace {

constexpr Index3 kSteps[6] = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};

// Neighbour sums through Field::at, which applies the boundary convention.
Field laplacian_oracle(const Field& u) {
  Field out(u.box());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const Index3 x = u.box().site(i);
    double acc = 0.0;
    for (Index3 e : kSteps) acc += u.at(x + e) - u[i];
    out[i] = acc;
  }
  return out;
}

// Sum over undirected edges touching the box, enumerated once each by the
// positive step from the lower endpoint.
double edge_sum_oracle(const Field& u, const Field& v) {
  const LatticeBox& box = u.box();
  double acc = 0.0;
  const int lo = box.lo() - (box.periodic() ? 0 : 1);
  const int hi = box.hi();
  for (int a = lo; a <= hi; ++a) {
    for (int b = lo; b <= hi; ++b) {
      for (int c = lo; c <= hi; ++c) {
        const Index3 x{a, b, c};
        if (box.periodic() && !box.contains(x)) continue;
        for (int k = 0; k < 3; ++k) {
          Index3 y = x;
          y[k] += 1;
          acc += (u.at(y) - u.at(x)) * (v.at(y) - v.at(x));
        }
      }
    }
  }
  return acc;
}

}  // namespace

TEST(LatticeBox, OffsetsRoundTrip) {
  for (const LatticeBox& box : {LatticeBox(3), LatticeBox(2, Boundary::periodic), LatticeBox::even_torus(3)}) {
    for (std::size_t i = 0; i < box.site_count(); ++i) EXPECT_EQ(box.offset(box.site(i)), i);
  }
  const LatticeBox even = LatticeBox::even_torus(3);
  EXPECT_EQ(even.side(), 6);
  EXPECT_EQ(even.lo(), -3);
  EXPECT_EQ(even.hi(), 2);
  EXPECT_EQ(even.wrap({3, -4, 9}), (Index3{-3, 2, -3}));
}

TEST(LatticeBox, GraphNormIsL1) {
  EXPECT_EQ(graph_norm({1, -2, 3}), 6);
  EXPECT_EQ(graph_norm({0, 0, 0}), 0);
}

TEST(Laplacian, MatchesNeighbourOracle) {
  Rng rng(11);
  for (const LatticeBox& box : {LatticeBox(3), LatticeBox(3, Boundary::periodic), LatticeBox::even_torus(2)}) {
    const Field u = normal_field(box, rng);
    const Field expected = laplacian_oracle(u);
    const Field got = laplacian(u);
    for (std::size_t i = 0; i < u.size(); ++i) EXPECT_NEAR(got[i], expected[i], 1e-13);
  }
}

TEST(Laplacian, DeltaGradientEnergyIsSix) {
  const LatticeBox box(2);
  const Field d = Field::delta(box, {0, 0, 0});
  EXPECT_DOUBLE_EQ(gradient_energy(d), 6.0);
  // A corner delta still has six edges once the exterior zeros are counted.
  EXPECT_DOUBLE_EQ(gradient_energy(Field::delta(box, {2, 2, 2})), 6.0);
  const Field lap = laplacian(d);
  EXPECT_DOUBLE_EQ(lap.at({0, 0, 0}), -6.0);
  EXPECT_DOUBLE_EQ(lap.at({1, 0, 0}), 1.0);
}

TEST(Laplacian, SummationByParts) {
  Rng rng(5);
  for (const LatticeBox& box : {LatticeBox(3), LatticeBox(3, Boundary::periodic), LatticeBox::even_torus(3)}) {
    const Field u = normal_field(box, rng);
    const Field v = normal_field(box, rng);
    const double edges = edge_sum_oracle(u, v);
    EXPECT_NEAR(gradient_pairing(u, v), edges, 1e-11 * std::abs(edges) + 1e-12);
    EXPECT_NEAR(-dot(u, laplacian(v)), edges, 1e-11 * std::abs(edges) + 1e-12);
  }
}

TEST(GradientForm, SumsToEnergyOnTorus) {
  Rng rng(8);
  const LatticeBox torus(3, Boundary::periodic);
  const Field u = normal_field(torus, rng);
  double sum = 0.0;
  for (double g : gradient_form(u, u).values()) sum += g;
  EXPECT_NEAR(sum, gradient_energy(u), 1e-11 * gradient_energy(u));

  // On a dirichlet box the exterior edges carry extra mass.
  const LatticeBox box(3);
  const Field w = random_field(box, rng, 0.5, 1.0);
  double inside = 0.0;
  for (double g : gradient_form(w, w).values()) inside += g;
  EXPECT_LT(inside, gradient_energy(w));
}

TEST(Norms, LpAndHInner) {
  const LatticeBox box(2);
  Field u(box);
  u.ref({0, 0, 0}) = 3.0;
  u.ref({1, 0, 0}) = -4.0;
  EXPECT_DOUBLE_EQ(lp_norm(u, 2.0), 5.0);
  EXPECT_DOUBLE_EQ(lp_norm(u, 1.0), 7.0);
  EXPECT_DOUBLE_EQ(lp_norm(u, INFINITY), 4.0);
  EXPECT_THROW(lp_norm(u, 0.5), std::invalid_argument);

  Rng rng(3);
  const Field V = random_field(box, rng, 1.0, 2.0);
  const Field a = normal_field(box, rng);
  const Field b = normal_field(box, rng);
  const double ab = h_inner(a, b, 1.7, V);
  EXPECT_NEAR(ab, h_inner(b, a, 1.7, V), 1e-12);
  EXPECT_NEAR(ab, dot(a, apply_h_operator(b, 1.7, V)), 1e-11 * std::abs(ab));
  double vab = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) vab += V[i] * a[i] * b[i];
  EXPECT_NEAR(ab, 1.7 * gradient_pairing(a, b) + vab, 1e-11 * std::abs(ab));
}

TEST(Translate, WrapsOnTorusAndZeroFillsOnBox) {
  const LatticeBox torus = LatticeBox::even_torus(2);
  Rng rng(1);
  const Field u = normal_field(torus, rng);
  const Field t = translate(u, {4, 0, 0});
  for (std::size_t i = 0; i < u.size(); ++i) EXPECT_EQ(t[i], u[i]);
  const Field s = translate(u, {1, -1, 0});
  EXPECT_EQ(s.at({0, 0, 0}), u.at({-1, 1, 0}));

  const LatticeBox box(2);
  const Field d = Field::delta(box, {2, 0, 0});
  EXPECT_EQ(lp_norm(translate(d, {1, 0, 0}), 1.0), 0.0);
  EXPECT_EQ(translate(d, {-1, 0, 0}).at({1, 0, 0}), 1.0);
}

TEST(Octahedral, GroupHas48DistinctElements) {
  const auto& g = octahedral_group();
  std::set<std::tuple<int, int, int>> images;
  for (const auto& e : g) {
    const Index3 y = e.apply({1, 2, 3});
    images.insert({y.x1, y.x2, y.x3});
  }
  EXPECT_EQ(images.size(), 48u);
}

TEST(Octahedral, BurnsideOrbitCountOnRadiusTwoBox) {
  const LatticeBox box(2);
  // Oracle: orbits are the sorted absolute coordinate triples, 10 of them
  // for entries in {0, 1, 2}.
  std::set<std::tuple<int, int, int>> classes;
  for (std::size_t i = 0; i < box.site_count(); ++i) {
    const Index3 x = box.site(i);
    int a[3] = {std::abs(x.x1), std::abs(x.x2), std::abs(x.x3)};
    std::sort(a, a + 3);
    classes.insert({a[0], a[1], a[2]});
  }
  ASSERT_EQ(classes.size(), 10u);

  // Burnside: average number of fixed sites over the group.
  long fixed = 0;
  for (const auto& g : octahedral_group()) {
    for (std::size_t i = 0; i < box.site_count(); ++i) fixed += g.apply(box.site(i)) == box.site(i);
  }
  EXPECT_EQ(fixed % 48, 0);
  EXPECT_EQ(fixed / 48, 10);
}

TEST(Octahedral, AverageIsInvariantAndIdempotent) {
  const LatticeBox box(3);
  Rng rng(2);
  const Field u = normal_field(box, rng);
  const Field avg = octahedral_average(u, {0, 0, 0});
  const Field twice = octahedral_average(avg, {0, 0, 0});
  for (std::size_t i = 0; i < u.size(); ++i) EXPECT_NEAR(twice[i], avg[i], 1e-14);
  for (const auto& g : octahedral_group()) EXPECT_NEAR(avg.at(g.apply({1, 2, 3})), avg.at({1, 2, 3}), 1e-14);
  double su = 0.0, sa = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    su += u[i];
    sa += avg[i];
  }
  EXPECT_NEAR(su, sa, 1e-12);
}

TEST(Field, ArithmeticAndBoxChecks) {
  const LatticeBox box(1);
  Field a(box, 1.0);
  Field b(box, 2.0);
  EXPECT_EQ((a + b)[0], 3.0);
  EXPECT_EQ((b - a)[0], 1.0);
  EXPECT_EQ((2.0 * b)[5], 4.0);
  axpy(3.0, a, b);
  EXPECT_EQ(b[0], 5.0);
  EXPECT_EQ(dot(a, a), 27.0);
  EXPECT_THROW(dot(a, Field(LatticeBox(2))), std::invalid_argument);
  EXPECT_EQ(Field(box).at({5, 5, 5}), 0.0);
}
