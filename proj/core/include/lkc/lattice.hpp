#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace lkc {

/// Boundary convention of a truncated lattice.
///
/// `dirichlet_zero` treats every site outside the box as carrying the value 0,
/// so the box is a finite window onto Z^3 with zero extension. `periodic`
/// identifies opposite faces, turning the box into a discrete torus.
enum class Boundary : std::uint8_t { dirichlet_zero = 0, periodic = 1 };

std::string_view to_string(Boundary mode);
Boundary boundary_from_string(std::string_view name);

struct Index3 {
  int x1 = 0;
  int x2 = 0;
  int x3 = 0;

  constexpr int operator[](int axis) const { return axis == 0 ? x1 : (axis == 1 ? x2 : x3); }
  constexpr int& operator[](int axis) { return axis == 0 ? x1 : (axis == 1 ? x2 : x3); }

  friend constexpr bool operator==(const Index3&, const Index3&) = default;
  friend constexpr Index3 operator+(Index3 a, Index3 b) { return {a.x1 + b.x1, a.x2 + b.x2, a.x3 + b.x3}; }
  friend constexpr Index3 operator-(Index3 a, Index3 b) { return {a.x1 - b.x1, a.x2 - b.x2, a.x3 - b.x3}; }
  friend constexpr Index3 operator-(Index3 a) { return {-a.x1, -a.x2, -a.x3}; }
};

/// Graph (l1) distance |x| on Z^3.
int graph_norm(Index3 x);

/// Finite truncation of Z^3: sites x with lo <= x_i <= hi on every axis.
///
/// The standard box has radius n and side 2n+1 (sites -n..n). A periodic box
/// may also be built with an even side 2n (sites -n..n-1) so that potentials
/// with even period tile the torus exactly.
class LatticeBox {
 public:
  LatticeBox() = default;
  explicit LatticeBox(int radius, Boundary mode = Boundary::dirichlet_zero);

  /// Periodic box with side 2n, sites -n..n-1 on every axis.
  static LatticeBox even_torus(int radius);

  int radius() const { return radius_; }
  int side() const { return side_; }
  int lo() const { return -radius_; }
  int hi() const { return -radius_ + side_ - 1; }
  Boundary boundary() const { return mode_; }
  bool periodic() const { return mode_ == Boundary::periodic; }
  bool standard_side() const { return side_ == 2 * radius_ + 1; }
  std::size_t site_count() const {
    const auto s = static_cast<std::size_t>(side_);
    return s * s * s;
  }

  bool contains(Index3 x) const;
  /// Row-major offset ((x1-lo)*side + (x2-lo))*side + (x3-lo). Requires contains(x).
  std::size_t offset(Index3 x) const;
  Index3 site(std::size_t offset) const;
  /// Reduce each coordinate into [lo, hi] modulo the side.
  Index3 wrap(Index3 x) const;

  friend bool operator==(const LatticeBox&, const LatticeBox&) = default;

 private:
  LatticeBox(int radius, int side, Boundary mode);

  int radius_ = 0;
  int side_ = 1;
  Boundary mode_ = Boundary::dirichlet_zero;
};

/// Real-valued function on a LatticeBox, stored in row-major site order.
class Field {
 public:
  Field() = default;
  explicit Field(const LatticeBox& box, double value = 0.0);
  Field(const LatticeBox& box, std::vector<double> values);

  static Field delta(const LatticeBox& box, Index3 x, double height = 1.0);

  const LatticeBox& box() const { return box_; }
  std::size_t size() const { return values_.size(); }

  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }

  /// Value at an arbitrary lattice point: 0 outside a dirichlet box, wrapped on a torus.
  double at(Index3 x) const;
  double& ref(Index3 x) { return values_[box_.offset(x)]; }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  bool all_finite() const;

  Field& operator+=(const Field& other);
  Field& operator-=(const Field& other);
  Field& operator*=(double s);

  friend bool operator==(const Field&, const Field&) = default;

 private:
  LatticeBox box_;
  std::vector<double> values_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(double s, Field a);
Field operator*(Field a, double s);

void require_same_box(const Field& a, const Field& b);

/// Plain sum_x a(x) b(x), accumulated sequentially in offset order.
double dot(const Field& a, const Field& b);
/// y += s * x
void axpy(double s, const Field& x, Field& y);

/// Delta u(x) = sum_{y~x} (u(y) - u(x)) with the box's boundary convention.
Field laplacian(const Field& u);

/// Gamma(u,v)(x) = 1/2 sum_{y~x} (u(y)-u(x))(v(y)-v(x)) at the box sites.
///
/// On a dirichlet box the exterior sites adjacent to the boundary also carry
/// gradient mass; they are not part of this field but are included in
/// gradient_pairing().
Field gradient_form(const Field& u, const Field& v);

/// int grad u . grad v = sum over all edges of Z^3 (or of the torus) of
/// (u(y)-u(x))(v(y)-v(x)), each undirected edge counted once.
double gradient_pairing(const Field& u, const Field& v);

/// int |grad u|^2 = gradient_pairing(u, u).
double gradient_energy(const Field& u);

/// l^p norm; p may be +infinity. Throws std::invalid_argument for p < 1.
double lp_norm(const Field& u, double p);

/// H inner product a * int grad u grad v + sum V u v, with V sampled on the box.
double h_inner(const Field& u, const Field& v, double a, const Field& potential);
double h_norm(const Field& u, double a, const Field& potential);

/// (-a Delta + V) u, the operator whose quadratic form is h_inner.
Field apply_h_operator(const Field& u, double a, const Field& potential);

/// result(x) = u(x - shift); wraps on a torus, shifts in zeros on a dirichlet box.
Field translate(const Field& u, Index3 shift);

/// Signed permutation of coordinates: x -> (s0 x_{p0}, s1 x_{p1}, s2 x_{p2}).
struct OctahedralElement {
  std::array<int, 3> perm;
  std::array<int, 3> sign;
  Index3 apply(Index3 x) const;
};

/// The 48 symmetries of the cube fixing the origin.
const std::array<OctahedralElement, 48>& octahedral_group();

/// Average of u over the octahedral orbit about `center`. Requires that the
/// box be mapped to itself by every group element about the center.
Field octahedral_average(const Field& u, Index3 center);

}  // namespace lkc
