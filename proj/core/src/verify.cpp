#include "lkc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "lkc/rng.hpp"

namespace lkc {

namespace {

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(10) << v;
  return s.str();
}

std::string fmt(Index3 x) {
  return "(" + std::to_string(x.x1) + "," + std::to_string(x.x2) + "," + std::to_string(x.x3) + ")";
}

double max_abs(const Field& u) {
  double m = 0.0;
  for (double v : u.values()) m = std::max(m, std::abs(v));
  return m;
}

// Unit vector in H from a random draw; alternates signed normal and
// nonnegative uniform fields so both kinds of direction are sampled.
Field random_direction(const EnergyModel& model, Rng& rng, int trial) {
  Field u = (trial % 2 == 0) ? normal_field(model.box(), rng) : random_field(model.box(), rng);
  return sphere_inverse(model, u);
}

// Smallest t > 0 with J(t w) = 0 for a unit w: the root of
// 1/2 + b/4 A^2 t^2 - 1/2 B t^{2p-2}. Infinite when B <= 0.
double positive_energy_edge(const FiberCoefficients& c, double b, double p) {
  if (!(c.B > 0.0)) return std::numeric_limits<double>::infinity();
  auto h = [&](double t) {
    return 0.5 * c.normH2 + 0.25 * b * c.A * c.A * t * t - 0.5 * c.B * std::pow(t, 2.0 * p - 2.0);
  };
  double lo = 0.0;
  double hi = 1.0;
  while (h(hi) > 0.0) {
    lo = hi;
    hi *= 2.0;
  }
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (h(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double PropertyReport::at(const std::string& key) const {
  const auto it = measured.find(key);
  if (it == measured.end()) throw std::out_of_range("no measured value '" + key + "' in " + name);
  return it->second;
}

std::string PropertyReport::measured_string() const {
  std::string out;
  for (const auto& [k, v] : measured) {
    if (!out.empty()) out += ';';
    out += k + "=" + fmt(v);
  }
  return out;
}

void VerifyOptions::validate() const {
  auto need = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
  };
  need(threads >= 1, "threads must be at least 1");
  need(mountain_pass_trials >= 10, "mountain_pass_trials must be at least 10");
  need(mountain_pass_max_halvings >= 1, "mountain_pass_max_halvings must be positive");
  need(hls_trials >= 1, "hls_trials must be positive");
  need(!hls_radii.empty(), "hls_radii must not be empty");
  need(hls_tolerance > 0.0, "hls_tolerance must be positive");
  need(fiber_trials >= 1, "fiber_trials must be positive");
  need(fiber_grid >= 2, "fiber_grid must be at least 2");
  need(fiber_tolerance > 0.0, "fiber_tolerance must be positive");
  need(level_samples >= 1, "level_samples must be positive");
  need(level_tolerance > 0.0 && segment_tolerance > 0.0, "level tolerances must be positive");
  need(box_radii.size() >= 2, "box_radii needs at least two radii");
  need(std::is_sorted(box_radii.begin(), box_radii.end()) &&
           std::adjacent_find(box_radii.begin(), box_radii.end()) == box_radii.end(),
       "box_radii must be strictly increasing");
  need(box_radii.front() >= 1, "box_radii must be positive");
  for (int r : hls_radii) need(r >= 1, "hls_radii must be positive");
  need(box_tolerance > 0.0, "box_tolerance must be positive");
  need(translation_tolerance > 0.0 && symmetry_tolerance > 0.0, "symmetry tolerances must be positive");
}

PropertyReport check_mountain_pass_geometry(const EnergyModel& model, int trials, std::uint64_t seed,
                                            int max_halvings) {
  if (trials < 10) throw std::invalid_argument("check_mountain_pass_geometry needs at least 10 trials");
  const ProblemSpec& spec = model.spec();
  const double b = spec.b;
  const double p = spec.nonlinearity.p;

  PropertyReport rep;
  rep.name = "mountain_pass_geometry";
  rep.anchor = "J >= sigma > 0 on ||u|| = rho and J(e) < 0 for some ||e|| > rho";
  rep.samples = trials;

  Rng rng(seed, "mountain-pass");
  std::vector<Field> dirs;
  std::vector<FiberCoefficients> coeffs;
  dirs.reserve(trials);
  for (int t = 0; t < trials; ++t) {
    dirs.push_back(random_direction(model, rng, t));
    coeffs.push_back(model.fiber_coefficients(dirs.back()));
  }

  double edge = std::numeric_limits<double>::infinity();
  for (const auto& c : coeffs) edge = std::min(edge, positive_energy_edge(c, b, p));
  rep.measured["rho_edge"] = edge;

  double rho = 1.0;
  double sigma = -std::numeric_limits<double>::infinity();
  int k = 0;
  for (; k <= max_halvings; ++k, rho *= 0.5) {
    sigma = std::numeric_limits<double>::infinity();
    for (const auto& c : coeffs) sigma = std::min(sigma, fiber_energy(c, b, p, rho));
    if (sigma > 0.0) break;
  }
  const bool found_rho = sigma > 0.0;
  rep.measured["rho"] = rho;
  rep.measured["sigma"] = sigma;

  // e along the first direction: doubling t eventually lets t^{2p} B win.
  double t = 2.0 * rho;
  double je = 0.0;
  bool found_e = false;
  for (int j = 0; j < 200; ++j, t *= 2.0) {
    je = model.energy(t * dirs.front());
    if (je < 0.0) {
      found_e = true;
      break;
    }
  }
  rep.measured["e_norm"] = t;
  rep.measured["J_e"] = je;

  rep.pass = found_rho && found_e && t > rho;
  if (!found_rho) rep.witness = "no rho = 2^-k with k <= " + std::to_string(max_halvings) + " gave min J > 0";
  if (!found_e) rep.witness += (rep.witness.empty() ? "" : "; ") + std::string("no e with J(e) < 0 up to ||e|| = ") + fmt(t);
  return rep;
}

PropertyReport check_hls(const GreenKernel& kernel, std::span<const int> radii, int trials, std::uint64_t seed,
                         double tolerance) {
  if (radii.empty()) throw std::invalid_argument("check_hls needs at least one radius");
  if (trials < 1) throw std::invalid_argument("check_hls needs at least one trial");
  const double alpha = kernel.alpha();
  const double r = 6.0 / (3.0 + alpha);
  const double q = 6.0 / (3.0 - alpha);

  PropertyReport rep;
  rep.name = "hls_inequality";
  rep.anchor = "sum (R * u) v <= C |u|_r |v|_s with r = s = 6/(3+alpha)";
  rep.samples = trials * static_cast<int>(radii.size());
  rep.tolerance = tolerance;
  rep.measured["r"] = r;
  rep.measured["delta_ratio"] = kernel({0, 0, 0});

  double sup_lo = std::numeric_limits<double>::infinity();
  double sup_hi = 0.0;
  double homogeneity = 0.0;
  bool finite = true;
  for (int n : radii) {
    const LatticeBox box(n);
    if (!kernel.covers(box)) throw std::invalid_argument("check_hls: kernel does not cover radius " + std::to_string(n));
    const Convolver conv(kernel, box);
    Rng rng(seed, "hls/" + std::to_string(n));
    auto random_site = [&] {
      auto c = [&] { return static_cast<int>(std::floor(rng.uniform(-n, n + 1))); };
      return Index3{c(), c(), c()};
    };
    auto profile = [&](int family) {
      Field u(box);
      switch (family) {
        case 0:
          return random_field(box, rng);
        case 1:
          for (std::size_t i = 0; i < u.size(); ++i) u[i] = rng.uniform() < 0.1 ? rng.uniform() : 0.0;
          u.ref(random_site()) += 1.0;
          return u;
        case 2: {
          const Index3 c = random_site();
          const double w = rng.uniform(0.3, 0.5 * n);
          for (std::size_t i = 0; i < u.size(); ++i) {
            const Index3 x = box.site(i) - c;
            u[i] = std::exp(-(x.x1 * x.x1 + x.x2 * x.x2 + x.x3 * x.x3) / (2.0 * w * w));
          }
          return u;
        }
        case 3:
          return Field::delta(box, random_site());
        default: {
          const Index3 c = random_site();
          const double l = 0.3 * std::pow(n / 0.3, rng.uniform());
          for (std::size_t i = 0; i < u.size(); ++i) {
            const Index3 x = box.site(i) - c;
            u[i] = std::pow(1.0 + (x.x1 * x.x1 + x.x2 * x.x2 + x.x3 * x.x3) / (l * l), -0.5 * (3.0 + alpha));
          }
          return u;
        }
      }
    };

    double sup = 0.0;
    double sup_q = 0.0;
    std::string best;
    for (int t = 0; t < trials; ++t) {
      const int family = t % 5;
      const Field u = profile(family);
      // Every other pair shares u, which is where the ratio peaks.
      const Field v = (t / 5) % 2 == 0 ? u : profile(family);
      const Field ru = conv.apply(u);
      const double nu = lp_norm(u, r);
      const double ratio = dot(ru, v) / (nu * lp_norm(v, r));
      const double ratio2 = dot(conv.apply(2.0 * u), v) / (lp_norm(2.0 * u, r) * lp_norm(v, r));
      homogeneity = std::max(homogeneity, std::abs(ratio2 - ratio) / ratio);
      // Restricted to the box, so a lower bound for the Z^3 value.
      sup_q = std::max(sup_q, lp_norm(ru, q) / nu);
      if (!std::isfinite(ratio)) {
        finite = false;
        rep.witness = "non-finite ratio at radius " + std::to_string(n) + ", trial " + std::to_string(t);
      }
      if (ratio > sup) {
        sup = ratio;
        best = "family " + std::to_string(family) + " trial " + std::to_string(t);
      }
    }
    rep.measured["sup_" + std::to_string(n)] = sup;
    rep.measured["sup_q_" + std::to_string(n)] = sup_q;
    sup_lo = std::min(sup_lo, sup);
    sup_hi = std::max(sup_hi, sup);
  }
  const double spread = (sup_hi - sup_lo) / sup_hi;
  rep.measured["constant"] = sup_hi;
  rep.measured["spread"] = spread;
  rep.measured["homogeneity"] = homogeneity;
  rep.pass = finite && spread <= tolerance && homogeneity <= 1e-12;
  if (!rep.pass && rep.witness.empty()) {
    rep.witness = spread > tolerance ? "sup varies by " + fmt(spread) + " across radii"
                                     : "ratio changed by " + fmt(homogeneity) + " under u -> 2u";
  }
  return rep;
}

PropertyReport check_fiber_monotonicity(const EnergyModel& model, int trials, int grid, std::uint64_t seed,
                                        double tolerance) {
  if (trials < 1 || grid < 2) throw std::invalid_argument("check_fiber_monotonicity needs trials >= 1, grid >= 2");
  const double p = model.spec().nonlinearity.p;
  const double theta = model.spec().nonlinearity.effective_theta();

  PropertyReport rep;
  rep.name = "fiber_monotonicity";
  rep.anchor = "g(t) = I(t u): t g'(t)/4 - g(t) positive, increasing; g(t) >= t^theta g(1) for t >= 1";
  rep.samples = trials * grid;
  rep.tolerance = tolerance;

  // Geometric grid on [1/20, 4].
  std::vector<double> ts(grid);
  for (int i = 0; i < grid; ++i) ts[i] = 0.05 * std::pow(80.0, static_cast<double>(i) / (grid - 1));

  Rng rng(seed, "fiber");
  double min_h = std::numeric_limits<double>::infinity();
  double min_theta_margin = std::numeric_limits<double>::infinity();
  double max_identity = 0.0;
  bool positive = true;
  bool increasing = true;
  bool theta_ok = true;
  for (int k = 0; k < trials; ++k) {
    const Field u = random_field(model.box(), rng, -1.0, 1.0);
    const double g1 = model.choquard_I(u);
    double prev_h = -std::numeric_limits<double>::infinity();
    for (double t : ts) {
      const Field tu = t * u;
      const double g = model.choquard_I(tu);
      const double dg = model.choquard_I_prime_pairing(tu, u);
      const double h = 0.25 * t * dg - g;
      const double scale = std::pow(t, 2.0 * p) * g1;
      min_h = std::min(min_h, h / scale);
      if (!(h > 0.0) && positive) {
        positive = false;
        rep.witness += "h <= 0 at sample " + std::to_string(k) + ", t = " + fmt(t) + "; ";
      }
      if (!(h > prev_h) && increasing) {
        increasing = false;
        rep.witness += "h not increasing at sample " + std::to_string(k) + ", t = " + fmt(t) + "; ";
      }
      prev_h = h;
      if (t >= 1.0) {
        const double floor = std::pow(t, theta) * g1;
        min_theta_margin = std::min(min_theta_margin, (g - floor) / scale);
        if (g < floor * (1.0 - tolerance) && theta_ok) {
          theta_ok = false;
          rep.witness += "g(t) < t^theta g(1) at sample " + std::to_string(k) + ", t = " + fmt(t) + "; ";
        }
      }
      max_identity = std::max(max_identity, std::abs(g - scale) / scale);
    }
  }
  rep.measured["min_h_scaled"] = min_h;
  rep.measured["min_theta_margin"] = min_theta_margin;
  rep.measured["identity_error"] = max_identity;
  rep.pass = positive && increasing && theta_ok && max_identity <= tolerance;
  if (max_identity > tolerance) rep.witness += "g(t) = t^{2p} g(1) off by " + fmt(max_identity);
  return rep;
}

PropertyReport check_level_identity(const EnergyModel& model, const SolveReport& report, int samples,
                                    std::uint64_t seed, double tolerance, double segment_tolerance) {
  if (samples < 1) throw std::invalid_argument("check_level_identity needs at least one sample");
  if (!report.converged) throw std::invalid_argument("check_level_identity needs a converged solve");
  const ProblemSpec& spec = model.spec();
  const double p = spec.nonlinearity.p;
  const double c = report.energy;
  const double scale = std::max(1.0, std::abs(c));

  PropertyReport rep;
  rep.name = "level_identity";
  rep.anchor = "c1 = c2 = c > 0: ray maxima and path maxima are bounded below by the ground level";
  rep.samples = samples + 2;
  rep.tolerance = tolerance;
  rep.measured["c"] = c;

  auto ray_max = [&](const Field& u) {
    const FiberCoefficients k = model.fiber_coefficients(u);
    return nehari_energy(k, p, nehari_scale(k, spec.b, p));
  };

  const Field& u0 = report.solution;
  Rng rng(seed, "level");
  double min_ray = std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) {
    Field u;
    if (i % 2 == 0) {
      u = random_field(model.box(), rng);
    } else {
      // Small perturbations of the ground state probe the infimum closely.
      const double eps = std::pow(10.0, -1.0 - 2.0 * rng.uniform());
      u = u0;
      axpy(eps * max_abs(u0), random_field(model.box(), rng, -1.0, 1.0), u);
    }
    const double m = ray_max(u);
    if (m < min_ray) min_ray = m;
    if (m < c - tolerance * scale && rep.witness.empty()) {
      rep.witness = "sample " + std::to_string(i) + " has ray maximum " + fmt(m) + " < c";
    }
  }
  rep.measured["min_ray_max"] = min_ray;

  const double ground_ray = ray_max(u0);
  const double ground_gap = std::abs(ground_ray - c) / scale;
  rep.measured["ground_ray_gap"] = ground_gap;

  // Straight path 0 -> e = T u0 with J(e) < 0, maximised by grid refinement.
  double T = 2.0;
  while (model.energy(T * u0) >= 0.0 && T < 1e6) T *= 2.0;
  auto J_at = [&](double t) { return model.energy((t * T) * u0); };
  double lo = 0.0;
  double hi = 1.0;
  double best_t = 0.0;
  double best = -std::numeric_limits<double>::infinity();
  for (int level = 0; level < 6; ++level) {
    const int n = 100;
    for (int i = 0; i <= n; ++i) {
      const double t = lo + (hi - lo) * i / n;
      const double v = J_at(t);
      if (v > best) {
        best = v;
        best_t = t;
      }
    }
    const double h = (hi - lo) / n;
    lo = std::max(0.0, best_t - h);
    hi = std::min(1.0, best_t + h);
  }
  const double segment_gap = (best - c) / scale;
  rep.measured["segment_max"] = best;
  rep.measured["segment_gap"] = segment_gap;

  const bool rays_ok = min_ray >= c - tolerance * scale;
  const bool ground_ok = ground_gap <= tolerance;
  const bool segment_ok = segment_gap >= -tolerance && std::abs(segment_gap) <= segment_tolerance;
  rep.pass = c > 0.0 && rays_ok && ground_ok && segment_ok;
  if (!ground_ok) rep.witness += (rep.witness.empty() ? "" : "; ") + std::string("ground-state ray max differs from c by ") + fmt(ground_gap);
  if (!segment_ok) rep.witness += (rep.witness.empty() ? "" : "; ") + std::string("segment max differs from c by ") + fmt(segment_gap);
  if (!(c > 0.0)) rep.witness += (rep.witness.empty() ? "" : "; ") + std::string("level c is not positive");
  return rep;
}

PropertyReport check_box_convergence(const ProblemSpec& spec_template, const GreenKernel& kernel,
                                     std::span<const int> radii, const SolveConfig& config, double tolerance) {
  if (radii.size() < 2) throw std::invalid_argument("check_box_convergence needs at least two radii");
  const bool coercive = spec_template.potential.kind == PotentialKind::coercive;
  PropertyReport rep;
  rep.name = "box_convergence";
  rep.anchor = coercive ? "c(n) nonincreasing and Cauchy as the dirichlet box radius n grows"
                        : "c(n) nonincreasing as the dirichlet box radius n grows";
  rep.samples = static_cast<int>(radii.size());
  rep.tolerance = tolerance;

  bool all_converged = true;
  bool monotone = true;
  double prev = 0.0;
  double last_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < radii.size(); ++i) {
    ProblemSpec spec = spec_template;
    spec.box = LatticeBox(radii[i]);
    const std::string key = std::to_string(radii[i]);
    double c = std::numeric_limits<double>::quiet_NaN();
    try {
      const SolveReport r = solve_ground_state(spec, kernel, config);
      c = r.energy;
      if (!r.converged) {
        all_converged = false;
        rep.witness += "radius " + key + " did not converge (" + r.status + "); ";
      }
    } catch (const std::exception& e) {
      all_converged = false;
      rep.witness += "radius " + key + ": " + e.what() + "; ";
    }
    rep.measured["c_" + key] = c;
    if (i > 0) {
      last_gap = std::abs(c - prev) / std::abs(c);
      rep.measured["gap_" + key] = last_gap;
      // Zero extension nests the boxes, so the level can only drop; allow
      // solver accuracy.
      if (!(c <= prev * (1.0 + 1e-9))) {
        monotone = false;
        rep.witness += "c rises from radius " + std::to_string(radii[i - 1]) + " to " + key + "; ";
      }
    }
    prev = c;
  }
  rep.measured["final_gap"] = last_gap;
  const bool cauchy = !coercive || last_gap < tolerance;
  if (all_converged && !cauchy) rep.witness += "final relative gap " + fmt(last_gap);
  rep.pass = all_converged && monotone && cauchy;
  return rep;
}

PropertyReport check_symmetry_and_translation(const EnergyModel& model, const SolveReport& report,
                                              double translation_tolerance, double symmetry_tolerance) {
  const ProblemSpec& spec = model.spec();
  const LatticeBox& box = model.box();
  const Field& u = report.solution;

  PropertyReport rep;
  rep.name = "symmetry_translation";
  if (box.periodic() && spec.potential.kind != PotentialKind::coercive) {
    const int tau = spec.potential.kind == PotentialKind::periodic ? spec.potential.period : 1;
    rep.anchor = "J is invariant under translation by the period of V";
    rep.tolerance = translation_tolerance;
    rep.samples = 3;
    const double j0 = model.energy(u);
    double worst = 0.0;
    for (int axis = 0; axis < 3; ++axis) {
      Index3 shift{};
      shift[axis] = tau;
      const double d = std::abs(model.energy(translate(u, shift)) - j0);
      rep.measured[std::string("dJ_") + "123"[axis]] = d;
      if (d > worst) {
        worst = d;
        if (d > translation_tolerance) rep.witness = "shift " + fmt(shift) + " changes J by " + fmt(d);
      }
    }
    rep.measured["J"] = j0;
    rep.measured["max_dJ"] = worst;
    rep.pass = worst <= translation_tolerance;
    return rep;
  }

  rep.anchor = "octahedral symmetry about the minimum of a radial V (diagnostic)";
  rep.tolerance = symmetry_tolerance;
  rep.samples = 48;
  Index3 center{};
  bool applicable = spec.potential.kind != PotentialKind::periodic;
  if (spec.potential.kind == PotentialKind::coercive) center = spec.potential.center;
  // The box must map to itself under the group about the center.
  for (int axis = 0; axis < 3 && applicable; ++axis) {
    applicable = center[axis] - box.lo() == box.hi() - center[axis];
  }
  for (int axis = 1; axis < 3 && applicable; ++axis) applicable = center[axis] - box.lo() == center[0] - box.lo();
  rep.measured["applicable"] = applicable ? 1.0 : 0.0;
  if (!applicable) {
    rep.pass = true;
    rep.samples = 0;
    return rep;
  }
  const Field avg = octahedral_average(u, center);
  const Field diff = u - avg;
  const double res = std::sqrt(dot(diff, diff) / dot(u, u));
  rep.measured["octahedral_residual"] = res;
  rep.pass = res <= symmetry_tolerance;
  if (!rep.pass) rep.witness = "octahedral residual " + fmt(res) + " about " + fmt(center);
  return rep;
}

PropertyReport check_kernel(const GreenKernel& kernel) {
  PropertyReport rep;
  rep.name = "kernel_positivity_symmetry";
  rep.anchor = "R_alpha > 0 and invariant under coordinate sign flips and permutations";
  rep.samples = static_cast<int>(kernel.table().size());
  const std::vector<std::string> defects = kernel_defects(kernel);
  rep.measured["defects"] = static_cast<double>(defects.size());
  rep.measured["K_alpha"] = kernel.K_alpha();
  rep.pass = defects.empty();
  for (std::size_t i = 0; i < defects.size() && i < 5; ++i) rep.witness += (i ? "; " : "") + defects[i];
  return rep;
}

int suite_table_radius(const ProblemSpec& spec, const VerifyOptions& options) {
  int r = GreenKernel::required_radius(spec.box);
  for (int n : options.hls_radii) r = std::max(r, GreenKernel::required_radius(LatticeBox(n)));
  for (int n : options.box_radii) r = std::max(r, GreenKernel::required_radius(LatticeBox(n)));
  return r;
}

std::vector<PropertyReport> run_verify_suite(const ProblemSpec& spec, const GreenKernel& kernel,
                                             const SolveReport& report, const VerifyOptions& options,
                                             const SolveConfig& solve_config) {
  options.validate();
  if (kernel.table_radius() < suite_table_radius(spec, options)) {
    throw std::invalid_argument("run_verify_suite: kernel table radius " + std::to_string(kernel.table_radius()) +
                                " is below the required " + std::to_string(suite_table_radius(spec, options)));
  }
  const EnergyModel model(spec, kernel);
  const std::uint64_t seed = options.seed;

  std::vector<std::function<PropertyReport()>> jobs;
  jobs.emplace_back([&] { return check_kernel(kernel); });
  jobs.emplace_back([&] { return check_hls(kernel, options.hls_radii, options.hls_trials, seed, options.hls_tolerance); });
  jobs.emplace_back([&] {
    return check_fiber_monotonicity(model, options.fiber_trials, options.fiber_grid, seed, options.fiber_tolerance);
  });
  jobs.emplace_back([&] {
    return check_mountain_pass_geometry(model, options.mountain_pass_trials, seed, options.mountain_pass_max_halvings);
  });
  jobs.emplace_back([&] {
    return check_level_identity(model, report, options.level_samples, seed, options.level_tolerance,
                                options.segment_tolerance);
  });
  jobs.emplace_back([&] {
    ProblemSpec tmpl = spec;
    tmpl.box = LatticeBox(options.box_radii.front());
    return check_box_convergence(tmpl, kernel, options.box_radii, solve_config, options.box_tolerance);
  });
  jobs.emplace_back([&] {
    return check_symmetry_and_translation(model, report, options.translation_tolerance, options.symmetry_tolerance);
  });

  auto guarded = [](const std::function<PropertyReport()>& job) {
    try {
      return job();
    } catch (const std::exception& e) {
      PropertyReport r;
      r.name = "check_error";
      r.anchor = "check raised an exception";
      r.witness = e.what();
      return r;
    }
  };

  std::vector<PropertyReport> out(jobs.size());
  if (options.threads <= 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) out[i] = guarded(jobs[i]);
    return out;
  }
  // Batches of `threads` concurrent checks; results keep the job order.
  for (std::size_t start = 0; start < jobs.size(); start += static_cast<std::size_t>(options.threads)) {
    std::vector<std::future<PropertyReport>> running;
    const std::size_t end = std::min(jobs.size(), start + static_cast<std::size_t>(options.threads));
    for (std::size_t i = start; i < end; ++i) running.push_back(std::async(std::launch::async, guarded, jobs[i]));
    for (std::size_t i = start; i < end; ++i) out[i] = running[i - start].get();
  }
  return out;
}

bool all_pass(std::span<const PropertyReport> reports) {
  return std::all_of(reports.begin(), reports.end(), [](const PropertyReport& r) { return r.pass; });
}

void write_suite_csv(std::ostream& out, std::span<const PropertyReport> reports) {
  out << "# sampled property checks on finite data: evidence, not proof\n";
  out << "name,anchor,samples,pass,measured,tolerance\n";
  for (const auto& r : reports) {
    out << r.name << ",\"" << r.anchor << "\"," << r.samples << ',' << (r.pass ? "pass" : "fail") << ",\""
        << r.measured_string() << "\"," << fmt(r.tolerance) << '\n';
  }
}

void write_suite_summary(std::ostream& out, std::span<const PropertyReport> reports) {
  out << "Property checks (sampled evidence, not proof)\n";
  for (const auto& r : reports) {
    out << "  " << (r.pass ? "pass " : "FAIL ") << std::left << std::setw(28) << r.name << ' ' << r.measured_string()
        << '\n';
    if (!r.pass && !r.witness.empty()) out << "       witness: " << r.witness << '\n';
  }
  const auto failed = std::count_if(reports.begin(), reports.end(), [](const PropertyReport& r) { return !r.pass; });
  out << (failed == 0 ? "all checks passed" : std::to_string(failed) + " check(s) failed") << '\n';
}

}  // namespace lkc
