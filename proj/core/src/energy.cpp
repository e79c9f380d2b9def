#include "lkc/energy.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lkc {

namespace {

[[noreturn]] void reject(const std::string& what) { throw std::invalid_argument(what); }

int floor_mod(int x, int m) {
  const int r = x % m;
  return r < 0 ? r + m : r;
}

}  // namespace

std::string_view to_string(PotentialKind kind) {
  switch (kind) {
    case PotentialKind::constant: return "constant";
    case PotentialKind::coercive: return "coercive";
    case PotentialKind::periodic: return "periodic";
  }
  return "constant";
}

PotentialKind potential_kind_from_string(std::string_view name) {
  if (name == "constant") return PotentialKind::constant;
  if (name == "coercive") return PotentialKind::coercive;
  if (name == "periodic") return PotentialKind::periodic;
  reject("unknown potential kind '" + std::string(name) + "'");
}

PotentialSpec PotentialSpec::constant(double V0) {
  PotentialSpec v;
  v.kind = PotentialKind::constant;
  v.V0 = V0;
  return v;
}

PotentialSpec PotentialSpec::coercive(double V0, Index3 center, double lambda, double beta) {
  PotentialSpec v;
  v.kind = PotentialKind::coercive;
  v.V0 = V0;
  v.center = center;
  v.lambda = lambda;
  v.beta = beta;
  return v;
}

PotentialSpec PotentialSpec::periodic(double V0, int period, std::vector<double> table) {
  PotentialSpec v;
  v.kind = PotentialKind::periodic;
  v.V0 = V0;
  v.period = period;
  v.table = std::move(table);
  return v;
}

void PotentialSpec::validate() const {
  if (!(V0 > 0.0) || !std::isfinite(V0)) reject("V0 must be positive");
  if (kind == PotentialKind::coercive) {
    if (!(lambda > 0.0)) reject("lambda must be positive");
    if (!(beta > 0.0)) reject("beta must be positive");
  }
  if (kind == PotentialKind::periodic) {
    if (period < 1) reject("period must be a positive integer");
    const auto n = static_cast<std::size_t>(period) * period * period;
    if (table.size() != n) {
      reject("periodic table needs " + std::to_string(n) + " values, got " + std::to_string(table.size()));
    }
    for (double v : table) {
      if (!(v >= V0) || !std::isfinite(v)) reject("periodic table values must be finite and >= V0");
    }
  }
}

double potential_eval(const PotentialSpec& V, Index3 x) {
  switch (V.kind) {
    case PotentialKind::constant:
      return V.V0;
    case PotentialKind::coercive:
      return V.V0 + V.lambda * std::pow(static_cast<double>(graph_norm(x - V.center)), V.beta);
    case PotentialKind::periodic: {
      const int t = V.period;
      const auto i = (static_cast<std::size_t>(floor_mod(x.x1, t)) * t + floor_mod(x.x2, t)) * t + floor_mod(x.x3, t);
      return V.table[i];
    }
  }
  return V.V0;
}

Field sample_potential(const PotentialSpec& V, const LatticeBox& box) {
  Field out(box);
  for (std::size_t i = 0; i < box.site_count(); ++i) out[i] = potential_eval(V, box.site(i));
  return out;
}

double Nonlinearity::f(double t) const { return c * std::pow(std::abs(t), p - 2.0) * t; }

double Nonlinearity::F(double t) const { return c * std::pow(std::abs(t), p) / p; }

void Nonlinearity::validate(double alpha) const {
  if (!(c > 0.0)) reject("nonlinearity coefficient c must be positive");
  if (!(p > 2.0)) reject("exponent p must exceed 2");
  if (!(p > (3.0 + alpha) / 3.0)) reject("exponent p must exceed (3 + alpha)/3");
  const double th = effective_theta();
  if (!(th > 4.0 && th <= 2.0 * p)) reject("theta must satisfy 4 < theta <= 2p");
}

void ProblemSpec::validate() const {
  if (!(a > 0.0)) reject("a must be positive");
  if (!(b >= 0.0)) reject("b must be nonnegative");
  if (!(alpha > 0.0 && alpha < 3.0)) reject("alpha must lie in (0, 3)");
  potential.validate();
  nonlinearity.validate(alpha);
  if (box.periodic() && potential.kind == PotentialKind::periodic && box.side() % potential.period != 0) {
    reject("potential period " + std::to_string(potential.period) + " does not tile a torus of side " +
           std::to_string(box.side()));
  }
}

FiberCoefficients FiberCoefficients::scaled(double s, double p) const {
  const double s2 = s * s;
  const double s2p = std::pow(std::abs(s), 2.0 * p);
  return {s2 * normH2, s2 * A, s2p * D, s2p * B};
}

EnergyModel::EnergyModel(ProblemSpec spec, const GreenKernel& kernel)
    : spec_(std::move(spec)),
      kernel_(&kernel),
      potential_(sample_potential(spec_.potential, spec_.box)),
      convolver_(kernel, spec_.box) {
  spec_.validate();
  if (kernel.alpha() != spec_.alpha) {
    reject("kernel alpha " + std::to_string(kernel.alpha()) + " differs from problem alpha " +
           std::to_string(spec_.alpha));
  }
}

Field EnergyModel::F_of(const Field& u) const {
  Field out(u.box());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = spec_.nonlinearity.F(u[i]);
  return out;
}

Field EnergyModel::f_of(const Field& u) const {
  Field out(u.box());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = spec_.nonlinearity.f(u[i]);
  return out;
}

EnergyModel::Evaluation EnergyModel::evaluate(const Field& u) const {
  require_same_box(u, potential_);
  const Field Fu = F_of(u);
  const Field fu = f_of(u);
  const Field conv = convolve(Fu);
  const double A = gradient_energy(u);
  double vu2 = 0.0;
  double B = 0.0;
  double D = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    vu2 += potential_[i] * u[i] * u[i];
    B += conv[i] * Fu[i];
    D += conv[i] * fu[i] * u[i];
  }
  Evaluation ev;
  ev.coefficients = {spec_.a * A + vu2, A, D, B};
  ev.energy = 0.5 * ev.coefficients.normH2 + 0.25 * spec_.b * A * A - 0.5 * B;
  ev.gradient = laplacian(u);
  const double kirchhoff = spec_.a + spec_.b * A;
  for (std::size_t i = 0; i < u.size(); ++i) {
    ev.gradient[i] = -kirchhoff * ev.gradient[i] + potential_[i] * u[i] - conv[i] * fu[i];
  }
  return ev;
}

double EnergyModel::energy(const Field& u) const {
  require_same_box(u, potential_);
  const Field Fu = F_of(u);
  const double A = gradient_energy(u);
  double vu2 = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) vu2 += potential_[i] * u[i] * u[i];
  return 0.5 * (spec_.a * A + vu2) + 0.25 * spec_.b * A * A - 0.5 * dot(convolve(Fu), Fu);
}

Field EnergyModel::gradient(const Field& u) const { return evaluate(u).gradient; }

double EnergyModel::pairing(const Field& u, const Field& phi) const {
  require_same_box(u, phi);
  const double A = gradient_energy(u);
  double vuphi = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) vuphi += potential_[i] * u[i] * phi[i];
  return (spec_.a + spec_.b * A) * gradient_pairing(u, phi) + vuphi - choquard_I_prime_pairing(u, phi);
}

double EnergyModel::choquard_I(const Field& u) const {
  const Field Fu = F_of(u);
  return 0.5 * dot(convolve(Fu), Fu);
}

double EnergyModel::choquard_I_prime_pairing(const Field& u, const Field& phi) const {
  require_same_box(u, phi);
  const Field conv = convolve(F_of(u));
  double acc = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) acc += conv[i] * spec_.nonlinearity.f(u[i]) * phi[i];
  return acc;
}

FiberCoefficients EnergyModel::fiber_coefficients(const Field& u) const { return evaluate(u).coefficients; }

double EnergyModel::h_inner(const Field& u, const Field& v) const {
  return lkc::h_inner(u, v, spec_.a, potential_);
}

double EnergyModel::h_norm(const Field& u) const { return lkc::h_norm(u, spec_.a, potential_); }

Field EnergyModel::apply_h(const Field& u) const { return apply_h_operator(u, spec_.a, potential_); }

CgResult EnergyModel::h_representer(const Field& g, double tolerance, int max_iterations) const {
  return solve_elliptic(g, spec_.a, tolerance, max_iterations);
}

CgResult EnergyModel::solve_elliptic(const Field& g, double coefficient, double tolerance, int max_iterations) const {
  require_same_box(g, potential_);
  if (!(coefficient > 0.0)) throw std::invalid_argument("elliptic coefficient must be positive");
  CgResult res;
  res.solution = Field(g.box());
  const double g_norm = std::sqrt(dot(g, g));
  if (g_norm == 0.0) {
    res.converged = true;
    return res;
  }
  Field diag(g.box());
  for (std::size_t i = 0; i < diag.size(); ++i) diag[i] = 6.0 * coefficient + potential_[i];

  Field& x = res.solution;
  Field r = g;
  Field z(g.box());
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = r[i] / diag[i];
  Field p = z;
  double rz = dot(r, z);
  for (int it = 1; it <= max_iterations; ++it) {
    const Field hp = apply_h_operator(p, coefficient, potential_);
    const double step = rz / dot(p, hp);
    axpy(step, p, x);
    axpy(-step, hp, r);
    res.iterations = it;
    res.relative_residual = std::sqrt(dot(r, r)) / g_norm;
    if (res.relative_residual <= tolerance) {
      res.converged = true;
      break;
    }
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = r[i] / diag[i];
    const double rz_next = dot(r, z);
    const double beta = rz_next / rz;
    rz = rz_next;
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = z[i] + beta * p[i];
  }
  return res;
}

double energy_J(const ProblemSpec& spec, const GreenKernel& kernel, const Field& u) {
  return EnergyModel(spec, kernel).energy(u);
}

Field grad_J(const ProblemSpec& spec, const GreenKernel& kernel, const Field& u) {
  return EnergyModel(spec, kernel).gradient(u);
}

double pairing(const ProblemSpec& spec, const GreenKernel& kernel, const Field& u, const Field& phi) {
  return EnergyModel(spec, kernel).pairing(u, phi);
}

}  // namespace lkc
