#pragma once

#include <span>

#include "lkc/energy.hpp"

namespace lkc {

/// Thrown for inputs with no Nehari point on their ray (u = 0, D <= 0).
class NehariError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct NehariScaleStats {
  int iterations = 0;
  double s_lo = 0.0;  ///< bracket with psi(s_lo) >= 0
  double s_hi = 0.0;  ///< and psi(s_hi) < 0
  double relative_defect = 0.0;  ///< |psi(s)| / normH2 at the returned root
};

/// The unique s > 0 with s u on the Nehari manifold, given the coefficients
/// of u. It is the root of psi(s) = normH2 + b A^2 s^2 - D s^{2p-2}, which has
/// exactly one sign change for p > 2. Bisection on a verified bracket with
/// Newton steps whenever they stay inside it.
double nehari_scale(const FiberCoefficients& coeffs, double b, double p, double tolerance = 1e-15,
                    NehariScaleStats* stats = nullptr);

/// J(s u) from the coefficients of u: s^2/2 normH2 + b s^4/4 A^2 - s^{2p}/2 B.
double fiber_energy(const FiberCoefficients& coeffs, double b, double p, double s);

/// J(s u) at the Nehari scale s = s_u, written as
///   s^2/4 ||u||^2 + s^{2p} (D/4 - B/2)
/// using b s^4 A^2 = s^{2p} D - s^2 ||u||^2. Unlike fiber_energy this has no
/// large cancellation between terms, so it is accurate to rounding.
double nehari_energy(const FiberCoefficients& coeffs, double p, double s);

/// m_hat(u) = s_u u. Optionally reports s_u.
Field project_to_nehari(const EnergyModel& model, const Field& u, double* s_out = nullptr);

/// m^{-1}(u) = u / ||u|| in the H-norm.
Field sphere_inverse(const EnergyModel& model, const Field& u);
Field sphere_inverse(const Field& u, double a, const Field& potential);

/// Everything known about the reduced functional Psi = J o m at a unit w.
struct ReducedState {
  Field w;                     ///< point on the unit sphere
  double s = 0.0;              ///< s_w, so m(w) = s w and ||m(w)|| = s
  Field u;                     ///< m(w)
  double psi = 0.0;            ///< Psi(w) = J(m(w)), via the Nehari identity
  FiberCoefficients coefficients;  ///< of u
  Field gradient;              ///< l2 gradient field of J at u
  double residual = 0.0;       ///< ||gradient||_2
};

/// Evaluates Psi and the l2 gradient of J at m(w). Requires ||w|| = 1.
ReducedState reduced_state(const EnergyModel& model, const Field& w);

struct ReducedGradient {
  Field r;                  ///< tangential H-representer of Psi'(w)
  double h_residual = 0.0;  ///< sqrt(sum g * H^{-1} g), the H-dual norm of J'(m(w))
  int cg_iterations = 0;
};

/// r = s_w (r_J - (r_J, w)_H w) where r_J is the H-representer of J'(m(w)).
/// Then (r, z)_H = <Psi'(w), z> for every z tangent at w. Throws
/// std::runtime_error if the CG solve misses its tolerance.
ReducedGradient reduced_gradient(const EnergyModel& model, const ReducedState& state, double cg_tolerance = 1e-12);
ReducedGradient reduced_gradient(const EnergyModel& model, const Field& w, double cg_tolerance = 1e-12);

/// Min over the samples of max_s J(s u) = J(m_hat(u)); an upper bound for the
/// ground-state level c.
double mountain_pass_level_check(const EnergyModel& model, std::span<const Field> samples);

}  // namespace lkc
