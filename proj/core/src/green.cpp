#include "lkc/green.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <thread>

#include "lkc/special.hpp"

namespace lkc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 3.0)) {
    throw std::invalid_argument("alpha must lie in (0, 3), got " + std::to_string(alpha));
  }
}

// 4 sin^2(theta/2) = 2 - 2 cos(theta) without cancellation near 0.
double mu_term(double theta) {
  const double s = std::sin(0.5 * theta);
  return 4.0 * s * s;
}

// Richardson elimination of error terms h^{p_0}, h^{p_1}, ... given estimates
// on nested grids, finest first. Returns the final value and writes the size
// of the last correction to *last_change.
double richardson(std::vector<double> t, const std::vector<double>& powers, double* last_change) {
  double change = 0.0;
  for (std::size_t j = 0; j < powers.size() && t.size() > 1; ++j) {
    const double factor = std::pow(2.0, powers[j]) - 1.0;
    std::vector<double> next(t.size() - 1);
    for (std::size_t l = 0; l + 1 < t.size(); ++l) next[l] = t[l] + (t[l] - t[l + 1]) / factor;
    change = next[0] - t[0];
    t = std::move(next);
  }
  if (last_change != nullptr) *last_change = std::abs(change);
  return t[0];
}

// Folded trapezoid weight on the octant [0, pi]^3 of a grid with `half` = N/2.
double fold_weight(int i, int half) { return (i == 0 || i == half) ? 1.0 : 2.0; }

std::size_t cube_index(int z1, int z2, int z3, int zmax) {
  const auto s = static_cast<std::size_t>(zmax + 1);
  return (static_cast<std::size_t>(z1) * s + static_cast<std::size_t>(z2)) * s +
         static_cast<std::size_t>(z3);
}

std::array<int, 3> sorted_desc(int a, int b, int c) {
  std::array<int, 3> v = {std::abs(a), std::abs(b), std::abs(c)};
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

// Fills every permutation of the sorted entries in the cube.
void symmetrize_cube(std::vector<double>& cube, int zmax) {
  for (int z1 = 0; z1 <= zmax; ++z1) {
    for (int z2 = 0; z2 <= zmax; ++z2) {
      for (int z3 = 0; z3 <= zmax; ++z3) {
        const auto s = sorted_desc(z1, z2, z3);
        cube[cube_index(z1, z2, z3, zmax)] = cube[cube_index(s[0], s[1], s[2], zmax)];
      }
    }
  }
}

// Torus route. At each of four nested grids N, N/2, N/4, N/8 the punctured
// trapezoid sum of cos(z.k) mu^{-alpha/2} over the folded octant is
// contracted one axis at a time; Richardson then removes the error terms of
// the |k|^-alpha singularity, which scale like h^{3-alpha+2j}.
std::vector<double> torus_cube(double alpha, int zmax, const GreenOptions& options,
                               double* worst_error) {
  const int n = options.resolution;
  if (n < 64 || n % 16 != 0) {
    throw std::invalid_argument("torus quadrature resolution must be a multiple of 16, at least 64");
  }
  const int half = n / 2;
  const int nz = zmax + 1;
  const double exponent = -0.5 * alpha;

  std::vector<double> mu1(static_cast<std::size_t>(half) + 1);
  for (int i = 0; i <= half; ++i) mu1[static_cast<std::size_t>(i)] = mu_term(kTwoPi * i / n);
  std::vector<double> cosz(static_cast<std::size_t>(nz) * (half + 1));
  for (int z = 0; z < nz; ++z) {
    for (int i = 0; i <= half; ++i) {
      cosz[static_cast<std::size_t>(z) * (half + 1) + i] = std::cos(kTwoPi * z * i / n);
    }
  }
  auto cz = [&](int z, int i) { return cosz[static_cast<std::size_t>(z) * (half + 1) + i]; };

  constexpr int kLevels = 4;
  const std::size_t cube = static_cast<std::size_t>(nz) * nz * nz;
  std::vector<std::vector<double>> level(kLevels, std::vector<double>(cube, 0.0));

  for (int lv = 0; lv < kLevels; ++lv) {
    const int stride = 1 << lv;
    const int pts = half / stride + 1;
    std::vector<double>& acc = level[static_cast<std::size_t>(lv)];
    std::vector<double> t_jz(static_cast<std::size_t>(pts) * nz);
    std::vector<double> u_zz(static_cast<std::size_t>(nz) * nz);
    for (int i = 0; i <= half; i += stride) {
      std::fill(t_jz.begin(), t_jz.end(), 0.0);
      for (int jj = 0; jj < pts; ++jj) {
        const int j = jj * stride;
        for (int k = 0; k <= half; k += stride) {
          if (i == 0 && j == 0 && k == 0) continue;
          const double mu = mu1[static_cast<std::size_t>(i)] + mu1[static_cast<std::size_t>(j)] +
                            mu1[static_cast<std::size_t>(k)];
          const double f = fold_weight(k, half) * std::pow(mu, exponent);
          double* row = &t_jz[static_cast<std::size_t>(jj) * nz];
          for (int z3 = 0; z3 < nz; ++z3) row[z3] += f * cz(z3, k);
        }
      }
      std::fill(u_zz.begin(), u_zz.end(), 0.0);
      for (int jj = 0; jj < pts; ++jj) {
        const int j = jj * stride;
        const double wj = fold_weight(j, half);
        const double* row = &t_jz[static_cast<std::size_t>(jj) * nz];
        for (int z2 = 0; z2 < nz; ++z2) {
          const double c = wj * cz(z2, j);
          for (int z3 = 0; z3 < nz; ++z3) u_zz[static_cast<std::size_t>(z2) * nz + z3] += c * row[z3];
        }
      }
      const double wi = fold_weight(i, half);
      for (int z1 = 0; z1 < nz; ++z1) {
        const double c = wi * cz(z1, i);
        for (std::size_t q = 0; q < u_zz.size(); ++q) acc[static_cast<std::size_t>(z1) * u_zz.size() + q] += c * u_zz[q];
      }
    }
    const double cells = static_cast<double>(n / stride);
    const double norm = 1.0 / (cells * cells * cells);
    for (double& v : acc) v *= norm;
  }

  const std::vector<double> powers = {3.0 - alpha, 5.0 - alpha, 7.0 - alpha};
  std::vector<double> out(cube);
  double worst = 0.0;
  for (std::size_t q = 0; q < cube; ++q) {
    std::vector<double> t(kLevels);
    for (int lv = 0; lv < kLevels; ++lv) t[static_cast<std::size_t>(lv)] = level[static_cast<std::size_t>(lv)][q];
    double change = 0.0;
    out[q] = richardson(std::move(t), powers, &change);
    worst = std::max(worst, change / std::abs(out[q]));
  }
  if (worst_error != nullptr) *worst_error = worst;
  return out;
}

// Heat-kernel route:
//   G(z) = 1/Gamma(a/2) int_0^inf t^{a/2-1} prod_j e^{-2t} I_{z_j}(2t) dt,
// with t = exp(pi/2 sinh s) and the trapezoid rule in s. Everything is
// carried in logarithms so that neither end of the range under- or overflows.
// The error estimate compares step h against step 2h on the same nodes.
std::vector<double> heat_cube(double alpha, int zmax, const GreenOptions& options,
                              double* worst_error) {
  if (options.resolution < 4) throw std::invalid_argument("heat kernel resolution must be at least 4");
  const double h = 1.0 / options.resolution;
  const double b = 0.5 * alpha;
  const int nz = zmax + 1;
  constexpr double kCutoff = -60.0;
  const double half_pi = 0.5 * std::numbers::pi;

  // Nodes s_j = j h. The z = 0 integrand dominates every other entry
  // (I_n <= I_0), so its log decides where the range can stop.
  struct Node {
    double log_weight;
    std::vector<double> log_bessel;
  };
  auto make_node = [&](int j) {
    const double s = j * h;
    const double lt = half_pi * std::sinh(s);
    Node node;
    node.log_weight = std::log(h * half_pi * std::cosh(s)) + b * lt;
    node.log_bessel.resize(static_cast<std::size_t>(nz));
    log_scaled_bessel_i(lt + std::numbers::ln2, node.log_bessel);
    return node;
  };
  auto log_term0 = [](const Node& node) { return node.log_weight + 3.0 * node.log_bessel[0]; };

  std::vector<Node> right;
  for (int j = 0;; ++j) {
    right.push_back(make_node(j));
    if (j > 8 && log_term0(right.back()) < kCutoff) break;
    if (j > 100000) throw QuadratureError("heat kernel range search did not terminate", INFINITY);
  }
  std::vector<Node> left;
  for (int j = -1;; --j) {
    left.push_back(make_node(j));
    if (j < -8 && log_term0(left.back()) < kCutoff) break;
    if (j < -100000) throw QuadratureError("heat kernel range search did not terminate", INFINITY);
  }
  // Ordered nodes with parity flags for the 2h sub-rule.
  std::vector<const Node*> nodes;
  std::vector<char> even;
  for (auto it = left.rbegin(); it != left.rend(); ++it) {
    nodes.push_back(&*it);
    even.push_back(static_cast<char>((left.rend() - it) % 2 == 0));
  }
  for (std::size_t j = 0; j < right.size(); ++j) {
    nodes.push_back(&right[j]);
    even.push_back(static_cast<char>(j % 2 == 0));
  }

  const double log_gamma = std::lgamma(b);
  std::vector<std::array<int, 3>> triples;
  for (int z1 = 0; z1 < nz; ++z1) {
    for (int z2 = 0; z2 <= z1; ++z2) {
      for (int z3 = 0; z3 <= z2; ++z3) triples.push_back({z1, z2, z3});
    }
  }
  std::vector<double> value(triples.size());
  std::vector<double> estimate(triples.size());
  auto work = [&](std::size_t begin, std::size_t step) {
    for (std::size_t q = begin; q < triples.size(); q += step) {
      const auto& z = triples[q];
      double fine = 0.0;
      double coarse = 0.0;
      for (std::size_t j = 0; j < nodes.size(); ++j) {
        const Node& node = *nodes[j];
        const double term = std::exp(node.log_weight - log_gamma + node.log_bessel[static_cast<std::size_t>(z[0])] +
                                     node.log_bessel[static_cast<std::size_t>(z[1])] +
                                     node.log_bessel[static_cast<std::size_t>(z[2])]);
        fine += term;
        if (even[j] != 0) coarse += term;
      }
      coarse *= 2.0;
      value[q] = fine;
      estimate[q] = std::abs(fine - coarse) / fine;
    }
  };
  int threads = options.threads > 0 ? options.threads : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, 64);
  if (threads == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work, static_cast<std::size_t>(t), static_cast<std::size_t>(threads));
    for (auto& th : pool) th.join();
  }

  std::vector<double> cube(static_cast<std::size_t>(nz) * nz * nz, 0.0);
  double worst = 0.0;
  for (std::size_t q = 0; q < triples.size(); ++q) {
    cube[cube_index(triples[q][0], triples[q][1], triples[q][2], zmax)] = value[q];
    worst = std::max(worst, estimate[q]);
  }
  symmetrize_cube(cube, zmax);
  if (worst_error != nullptr) *worst_error = worst;
  return cube;
}

}  // namespace

SymbolPoint::SymbolPoint(double k1, double k2, double k3) : k_{k1, k2, k3} {
  for (double k : k_) {
    if (!(k >= 0.0 && k <= kTwoPi)) throw std::invalid_argument("symbol point outside [0, 2pi]^3");
  }
}

double mu_symbol(const SymbolPoint& k) { return mu_term(k[0]) + mu_term(k[1]) + mu_term(k[2]); }

double compute_K_alpha(double alpha, int resolution) {
  require_alpha(alpha);
  if (resolution < 16 || resolution % 8 != 0) {
    throw std::invalid_argument("K_alpha resolution must be a multiple of 8, at least 16");
  }
  const int half = resolution / 2;
  std::vector<double> mu1(static_cast<std::size_t>(half) + 1);
  for (int i = 0; i <= half; ++i) mu1[static_cast<std::size_t>(i)] = mu_term(kTwoPi * i / resolution);

  std::vector<double> levels;
  for (int stride = 1; stride <= 4; stride *= 2) {
    double sum = 0.0;
    for (int i = 0; i <= half; i += stride) {
      double plane = 0.0;
      for (int j = 0; j <= half; j += stride) {
        double line = 0.0;
        for (int k = 0; k <= half; k += stride) {
          const double mu = mu1[static_cast<std::size_t>(i)] + mu1[static_cast<std::size_t>(j)] +
                            mu1[static_cast<std::size_t>(k)];
          line += fold_weight(k, half) * (mu > 0.0 ? std::pow(mu, 0.5 * alpha) : 0.0);
        }
        plane += fold_weight(j, half) * line;
      }
      sum += fold_weight(i, half) * plane;
    }
    const double cells = static_cast<double>(resolution / stride);
    levels.push_back(sum / (cells * cells * cells));
  }
  return richardson(levels, {3.0 + alpha, 5.0 + alpha}, nullptr);
}

std::string_view to_string(GreenMethod method) {
  return method == GreenMethod::torus_quadrature ? "torus_quadrature" : "heat_kernel";
}

GreenMethod green_method_from_string(std::string_view name) {
  if (name == "torus_quadrature" || name == "torus") return GreenMethod::torus_quadrature;
  if (name == "heat_kernel" || name == "heat") return GreenMethod::heat_kernel;
  throw std::invalid_argument("unknown kernel method '" + std::string(name) + "'");
}

std::vector<double> green_octant(double alpha, int zmax, const GreenOptions& options, QuadratureMeta* meta) {
  require_alpha(alpha);
  if (zmax < 0) throw std::invalid_argument("negative table radius");
  double worst = 0.0;
  std::vector<double> cube = options.method == GreenMethod::heat_kernel ? heat_cube(alpha, zmax, options, &worst)
                                                                        : torus_cube(alpha, zmax, options, &worst);
  if (meta != nullptr) *meta = QuadratureMeta{options.method, options.resolution, worst};
  if (!(worst <= options.tolerance)) {
    throw QuadratureError(std::string(to_string(options.method)) + " quadrature error estimate " +
                              std::to_string(worst) + " exceeds tolerance " + std::to_string(options.tolerance),
                          worst);
  }
  for (double v : cube) {
    if (!std::isfinite(v)) throw QuadratureError("non-finite kernel value", INFINITY);
  }
  return cube;
}

double green_value(double alpha, Index3 z, const GreenOptions& options) {
  const auto s = sorted_desc(z.x1, z.x2, z.x3);
  const std::vector<double> cube = green_octant(alpha, s[0], options);
  return compute_K_alpha(alpha, 128) * cube[cube_index(s[0], s[1], s[2], s[0])];
}

GreenKernel::GreenKernel(double alpha, double K_alpha, int table_radius, std::vector<double> table,
                         QuadratureMeta meta)
    : alpha_(alpha), K_alpha_(K_alpha), table_radius_(table_radius), table_(std::move(table)), meta_(meta) {
  const auto side = static_cast<std::size_t>(2 * table_radius + 1);
  if (table_radius < 0 || table_.size() != side * side * side) {
    throw std::invalid_argument("kernel table size does not match its radius");
  }
}

bool GreenKernel::in_range(Index3 z) const {
  return std::abs(z.x1) <= table_radius_ && std::abs(z.x2) <= table_radius_ && std::abs(z.x3) <= table_radius_;
}

std::size_t GreenKernel::offset(Index3 z) const {
  const auto side = static_cast<std::size_t>(2 * table_radius_ + 1);
  return (static_cast<std::size_t>(z.x1 + table_radius_) * side + static_cast<std::size_t>(z.x2 + table_radius_)) *
             side +
         static_cast<std::size_t>(z.x3 + table_radius_);
}

int GreenKernel::required_radius(const LatticeBox& box) {
  return box.periodic() ? box.side() / 2 : box.side() - 1;
}

bool GreenKernel::covers(const LatticeBox& box) const { return table_radius_ >= required_radius(box); }

GreenKernel build_kernel(double alpha, int table_radius, const GreenOptions& options) {
  require_alpha(alpha);
  QuadratureMeta meta;
  const std::vector<double> cube = green_octant(alpha, table_radius, options, &meta);
  const double K = compute_K_alpha(alpha, 128);
  const int m = table_radius;
  const auto side = static_cast<std::size_t>(2 * m + 1);
  std::vector<double> table(side * side * side);
  std::size_t q = 0;
  for (int z1 = -m; z1 <= m; ++z1) {
    for (int z2 = -m; z2 <= m; ++z2) {
      for (int z3 = -m; z3 <= m; ++z3) table[q++] = K * cube[cube_index(std::abs(z1), std::abs(z2), std::abs(z3), m)];
    }
  }
  return GreenKernel(alpha, K, table_radius, std::move(table), meta);
}

double fit_decay_slope(const GreenKernel& kernel, int zmin, int zmax, double* prefactor) {
  if (zmin < 1 || zmax <= zmin || zmax > kernel.table_radius()) {
    throw std::invalid_argument("fit_decay_slope: need 1 <= zmin < zmax <= table radius");
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const int n = zmax - zmin + 1;
  for (int z = zmin; z <= zmax; ++z) {
    const double x = std::log(static_cast<double>(z));
    const double y = std::log(kernel({z, 0, 0}));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  if (prefactor != nullptr) *prefactor = std::exp((sy - slope * sx) / n);
  return slope;
}

std::vector<std::string> kernel_defects(const GreenKernel& kernel) {
  std::vector<std::string> defects;
  const int m = kernel.table_radius();
  auto name = [](Index3 z) {
    return "(" + std::to_string(z.x1) + "," + std::to_string(z.x2) + "," + std::to_string(z.x3) + ")";
  };
  for (int z1 = -m; z1 <= m; ++z1) {
    for (int z2 = -m; z2 <= m; ++z2) {
      for (int z3 = -m; z3 <= m; ++z3) {
        const Index3 z{z1, z2, z3};
        const double v = kernel(z);
        if (!std::isfinite(v) || v <= 0.0) defects.push_back("nonpositive entry at " + name(z));
        if (kernel(-z) != v) defects.push_back("sign asymmetry at " + name(z));
        if (kernel(Index3{z2, z1, z3}) != v || kernel(Index3{z1, z3, z2}) != v) {
          defects.push_back("permutation asymmetry at " + name(z));
        }
        if (defects.size() > 20) return defects;
      }
    }
  }
  return defects;
}

}  // namespace lkc
