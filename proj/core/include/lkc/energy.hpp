#pragma once

#include <string_view>
#include <vector>

#include "lkc/convolution.hpp"
#include "lkc/green.hpp"
#include "lkc/lattice.hpp"

namespace lkc {

enum class PotentialKind { constant, coercive, periodic };

std::string_view to_string(PotentialKind kind);
PotentialKind potential_kind_from_string(std::string_view name);

/// V(x) >= V0 > 0 in one of three shapes:
///   constant  V(x) = V0
///   coercive  V(x) = V0 + lambda |x - center|^beta, |.| the graph (l1) distance
///   periodic  V(x) = table[x mod period], every entry >= V0
struct PotentialSpec {
  PotentialKind kind = PotentialKind::constant;
  double V0 = 1.0;
  Index3 center{};
  double lambda = 1.0;
  double beta = 2.0;
  int period = 1;
  /// period^3 values, row-major in (x1 mod period, x2 mod period, x3 mod period).
  std::vector<double> table;

  static PotentialSpec constant(double V0);
  static PotentialSpec coercive(double V0, Index3 center, double lambda, double beta);
  static PotentialSpec periodic(double V0, int period, std::vector<double> table);

  /// Throws std::invalid_argument naming the offending parameter.
  void validate() const;

  friend bool operator==(const PotentialSpec&, const PotentialSpec&) = default;
};

double potential_eval(const PotentialSpec& V, Index3 x);
Field sample_potential(const PotentialSpec& V, const LatticeBox& box);

/// Pure power f(t) = c |t|^{p-2} t, F(t) = c |t|^p / p.
struct Nonlinearity {
  double c = 1.0;
  double p = 3.0;
  /// Ambrosetti-Rabinowitz exponent, 4 < theta <= 2p. Zero selects 2p.
  double theta = 0.0;

  double f(double t) const;
  double F(double t) const;
  double effective_theta() const { return theta > 0.0 ? theta : 2.0 * p; }
  void validate(double alpha) const;

  friend bool operator==(const Nonlinearity&, const Nonlinearity&) = default;
};

struct ProblemSpec {
  double a = 1.0;
  double b = 1.0;
  double alpha = 1.0;
  LatticeBox box{8};
  PotentialSpec potential = PotentialSpec::constant(1.0);
  Nonlinearity nonlinearity;

  void validate() const;

  friend bool operator==(const ProblemSpec&, const ProblemSpec&) = default;
};

/// Scalars that determine J along the ray s -> s u.
struct FiberCoefficients {
  double normH2 = 0.0;  ///< ||u||^2
  double A = 0.0;       ///< int |grad u|^2
  double D = 0.0;       ///< int (R * F(u)) f(u) u
  double B = 0.0;       ///< int (R * F(u)) F(u)

  /// Coefficients of s u for the power nonlinearity of exponent p.
  FiberCoefficients scaled(double s, double p) const;
};

struct CgResult {
  Field solution;
  int iterations = 0;
  double relative_residual = 0.0;
  bool converged = false;
};

/// J(u) = 1/2 ||u||^2 + b/4 A^2 - 1/2 int (R * F(u)) F(u) for one problem and
/// one kernel, with the potential sampled and the FFT convolver prepared once.
/// All methods are const and thread safe.
class EnergyModel {
 public:
  EnergyModel(ProblemSpec spec, const GreenKernel& kernel);

  const ProblemSpec& spec() const { return spec_; }
  const LatticeBox& box() const { return spec_.box; }
  const GreenKernel& kernel() const { return *kernel_; }
  const Field& potential() const { return potential_; }

  Field convolve(const Field& w) const { return convolver_.apply(w); }
  Field F_of(const Field& u) const;
  Field f_of(const Field& u) const;

  double energy(const Field& u) const;
  /// g = -(a + b A) Delta u + V u - (R * F(u)) f(u), so that <J'(u), phi> = sum g phi.
  Field gradient(const Field& u) const;
  /// <J'(u), phi> in the weak form (a + bA) int grad u grad phi + sum V u phi - int (R*F(u)) f(u) phi.
  double pairing(const Field& u, const Field& phi) const;

  /// I(u) = 1/2 int (R * F(u)) F(u).
  double choquard_I(const Field& u) const;
  /// <I'(u), phi> = int (R * F(u)) f(u) phi.
  double choquard_I_prime_pairing(const Field& u, const Field& phi) const;

  FiberCoefficients fiber_coefficients(const Field& u) const;

  double h_inner(const Field& u, const Field& v) const;
  double h_norm(const Field& u) const;
  Field apply_h(const Field& u) const;
  /// Solves (-a Delta + V) r = g by Jacobi-preconditioned conjugate gradients,
  /// giving the H-representer r of the functional phi -> sum g phi.
  CgResult h_representer(const Field& g, double tolerance = 1e-12, int max_iterations = 2000) const;
  /// Same solve for (-k Delta + V) r = g with an arbitrary coefficient k > 0.
  CgResult solve_elliptic(const Field& g, double coefficient, double tolerance = 1e-12,
                          int max_iterations = 2000) const;

  /// One convolution shared by energy, gradient and fiber coefficients.
  struct Evaluation {
    double energy = 0.0;
    Field gradient;
    FiberCoefficients coefficients;
  };
  Evaluation evaluate(const Field& u) const;

 private:
  ProblemSpec spec_;
  const GreenKernel* kernel_;
  Field potential_;
  Convolver convolver_;
};

// Free-function forms, convenient for one-off evaluations.
double energy_J(const ProblemSpec& spec, const GreenKernel& kernel, const Field& u);
Field grad_J(const ProblemSpec& spec, const GreenKernel& kernel, const Field& u);
double pairing(const ProblemSpec& spec, const GreenKernel& kernel, const Field& u, const Field& phi);

}  // namespace lkc
