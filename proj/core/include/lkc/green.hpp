#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lkc/lattice.hpp"

namespace lkc {

/// A point k of the torus [0, 2pi]^3.
class SymbolPoint {
 public:
  SymbolPoint(double k1, double k2, double k3);
  double operator[](int j) const { return k_[static_cast<std::size_t>(j)]; }

 private:
  std::array<double, 3> k_;
};

/// mu(k) = 6 - 2 sum_j cos k_j, evaluated as sum_j 4 sin^2(k_j / 2) so that
/// the value keeps full relative accuracy near k = 0.
double mu_symbol(const SymbolPoint& k);

/// K_alpha = (2pi)^-3 int_T3 mu^{alpha/2} dk.
///
/// Trapezoid rule on the grid of `resolution` points per axis plus the two
/// coarser nested grids, combined by Richardson extrapolation. The integrand
/// is smooth except for the |k|^alpha cusp at k = 0, whose error terms scale
/// like N^-(3+alpha) and N^-(5+alpha); those two are eliminated.
/// Requires 0 < alpha < 3 and resolution a multiple of 8, at least 16.
double compute_K_alpha(double alpha, int resolution = 64);

enum class GreenMethod : std::uint32_t { torus_quadrature = 0, heat_kernel = 1 };

std::string_view to_string(GreenMethod method);
GreenMethod green_method_from_string(std::string_view name);

/// Raised when a quadrature's own error estimate exceeds its tolerance.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double estimated_error)
      : std::runtime_error(what), estimated_error_(estimated_error) {}
  double estimated_error() const { return estimated_error_; }

 private:
  double estimated_error_;
};

struct QuadratureMeta {
  GreenMethod method = GreenMethod::heat_kernel;
  /// Grid points per axis (torus) or steps per unit of the sinh variable (heat).
  int resolution = 64;
  /// Largest relative error estimate over the computed entries.
  double estimated_error = 0.0;
};

struct GreenOptions {
  GreenMethod method = GreenMethod::heat_kernel;
  /// Torus: points per axis, a multiple of 16. Heat kernel: steps per unit in
  /// the sinh variable; the estimate compares against half that density.
  int resolution = 64;
  /// Relative tolerance on the error estimate; larger estimates throw.
  double tolerance = 1e-9;
  /// Worker threads for table construction; 0 means hardware concurrency.
  int threads = 1;

  friend bool operator==(const GreenOptions&, const GreenOptions&) = default;
};

/// Dimensionless part G(z) = R_alpha(z) / K_alpha for all z in [0, zmax]^3,
/// laid out as ((z1 * (zmax+1)) + z2) * (zmax+1) + z3.
std::vector<double> green_octant(double alpha, int zmax, const GreenOptions& options,
                                 QuadratureMeta* meta = nullptr);

/// R_alpha(z) = K_alpha (2pi)^-3 int_T3 cos(z.k) mu^{-alpha/2}(k) dk.
double green_value(double alpha, Index3 z, const GreenOptions& options = {});

/// Immutable table of R_alpha(z) for |z_i| <= table_radius.
class GreenKernel {
 public:
  GreenKernel() = default;
  GreenKernel(double alpha, double K_alpha, int table_radius, std::vector<double> table,
              QuadratureMeta meta);

  double alpha() const { return alpha_; }
  double K_alpha() const { return K_alpha_; }
  int table_radius() const { return table_radius_; }
  const QuadratureMeta& quadrature() const { return meta_; }
  std::span<const double> table() const { return table_; }

  bool in_range(Index3 z) const;
  /// Same linearization as a Field on a box of radius table_radius.
  std::size_t offset(Index3 z) const;
  double operator()(Index3 z) const { return table_[offset(z)]; }

  /// True when every displacement between two sites of `box` is tabulated
  /// (dirichlet) or every minimum-image displacement is (periodic).
  bool covers(const LatticeBox& box) const;
  /// Table radius needed for `box`.
  static int required_radius(const LatticeBox& box);

 private:
  double alpha_ = 0.0;
  double K_alpha_ = 0.0;
  int table_radius_ = 0;
  std::vector<double> table_;
  QuadratureMeta meta_;
};

/// Computes the octant z1, z2, z3 >= 0 and reflects it into the full table.
/// K_alpha is taken from compute_K_alpha at resolution 128.
GreenKernel build_kernel(double alpha, int table_radius, const GreenOptions& options = {});

/// Least-squares slope of log R_alpha(z e1) against log z for integer z in
/// [zmin, zmax]; the far-field law predicts alpha - 3. Requires
/// 1 <= zmin < zmax <= table_radius. The fitted prefactor exp(intercept) is
/// stored in `prefactor` when given; it is reported, not checked.
double fit_decay_slope(const GreenKernel& kernel, int zmin, int zmax, double* prefactor = nullptr);

/// Problems found in a kernel table: nonpositive or non-finite entries and
/// asymmetry under sign flips or coordinate swaps. Empty when clean.
std::vector<std::string> kernel_defects(const GreenKernel& kernel);

}  // namespace lkc
