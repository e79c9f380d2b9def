#include "lkc/nehari.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace lkc {

double nehari_scale(const FiberCoefficients& c, double b, double p, double tolerance, NehariScaleStats* stats) {
  if (!(c.normH2 > 0.0) || !std::isfinite(c.normH2)) throw NehariError("nehari_scale: ||u||^2 must be positive");
  if (!(c.D > 0.0) || !std::isfinite(c.D)) throw NehariError("nehari_scale: D must be positive");
  if (!(p > 2.0)) throw NehariError("nehari_scale: p must exceed 2");
  const double q = 2.0 * p - 2.0;
  const double bA2 = b * c.A * c.A;
  auto psi = [&](double s) { return c.normH2 + bA2 * s * s - c.D * std::pow(s, q); };
  auto dpsi = [&](double s) { return 2.0 * bA2 * s - q * c.D * std::pow(s, q - 1.0); };

  // At s0 the b-free part vanishes, so psi(s0) = bA^2 s0^2 >= 0.
  double lo = std::pow(c.normH2 / c.D, 1.0 / q);
  NehariScaleStats st;
  if (psi(lo) <= 0.0) {
    st.s_lo = st.s_hi = lo;
    if (stats != nullptr) *stats = st;
    return lo;
  }
  double hi = 2.0 * lo;
  while (psi(hi) >= 0.0) {
    lo = hi;
    hi *= 2.0;
    if (!std::isfinite(hi)) throw NehariError("nehari_scale: no sign change found");
  }
  st.s_lo = lo;
  st.s_hi = hi;

  double s = 0.5 * (lo + hi);
  for (int it = 1; it <= 200; ++it) {
    st.iterations = it;
    const double v = psi(s);
    if (std::abs(v) <= tolerance * c.normH2) break;
    if (v > 0.0) {
      lo = s;
    } else {
      hi = s;
    }
    const double d = dpsi(s);
    double next = d != 0.0 ? s - v / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == s || hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) {
      s = next;
      break;
    }
    s = next;
  }
  st.relative_defect = std::abs(psi(s)) / c.normH2;
  if (stats != nullptr) *stats = st;
  return s;
}

double fiber_energy(const FiberCoefficients& c, double b, double p, double s) {
  const double s2 = s * s;
  return 0.5 * s2 * c.normH2 + 0.25 * b * s2 * s2 * c.A * c.A - 0.5 * std::pow(std::abs(s), 2.0 * p) * c.B;
}

double nehari_energy(const FiberCoefficients& c, double p, double s) {
  return 0.25 * s * s * c.normH2 + std::pow(std::abs(s), 2.0 * p) * (0.25 * c.D - 0.5 * c.B);
}

Field project_to_nehari(const EnergyModel& model, const Field& u, double* s_out) {
  const ProblemSpec& spec = model.spec();
  const double s = nehari_scale(model.fiber_coefficients(u), spec.b, spec.nonlinearity.p);
  if (s_out != nullptr) *s_out = s;
  return s * u;
}

Field sphere_inverse(const Field& u, double a, const Field& potential) {
  const double n = h_norm(u, a, potential);
  if (!(n > 0.0)) throw NehariError("sphere_inverse: u must be nonzero");
  return (1.0 / n) * u;
}

Field sphere_inverse(const EnergyModel& model, const Field& u) {
  return sphere_inverse(u, model.spec().a, model.potential());
}

ReducedState reduced_state(const EnergyModel& model, const Field& w) {
  const ProblemSpec& spec = model.spec();
  ReducedState st;
  st.w = w;
  const FiberCoefficients cw = model.fiber_coefficients(w);
  st.s = nehari_scale(cw, spec.b, spec.nonlinearity.p);
  st.u = st.s * w;
  const EnergyModel::Evaluation ev = model.evaluate(st.u);
  st.psi = nehari_energy(cw, spec.nonlinearity.p, st.s);
  st.coefficients = ev.coefficients;
  st.gradient = ev.gradient;
  st.residual = std::sqrt(dot(ev.gradient, ev.gradient));
  return st;
}

ReducedGradient reduced_gradient(const EnergyModel& model, const ReducedState& state, double cg_tolerance) {
  const CgResult cg = model.h_representer(state.gradient, cg_tolerance);
  if (!cg.converged) {
    throw std::runtime_error("representer CG stalled at relative residual " + std::to_string(cg.relative_residual));
  }
  ReducedGradient out;
  out.cg_iterations = cg.iterations;
  out.h_residual = std::sqrt(std::max(0.0, dot(state.gradient, cg.solution)));
  const double along = model.h_inner(cg.solution, state.w);
  out.r = cg.solution;
  axpy(-along, state.w, out.r);
  out.r *= state.s;
  return out;
}

ReducedGradient reduced_gradient(const EnergyModel& model, const Field& w, double cg_tolerance) {
  return reduced_gradient(model, reduced_state(model, w), cg_tolerance);
}

double mountain_pass_level_check(const EnergyModel& model, std::span<const Field> samples) {
  if (samples.empty()) throw std::invalid_argument("mountain_pass_level_check needs at least one sample");
  const ProblemSpec& spec = model.spec();
  double best = std::numeric_limits<double>::infinity();
  for (const Field& u : samples) {
    const FiberCoefficients c = model.fiber_coefficients(u);
    const double s = nehari_scale(c, spec.b, spec.nonlinearity.p);
    best = std::min(best, nehari_energy(c, spec.nonlinearity.p, s));
  }
  return best;
}

}  // namespace lkc
