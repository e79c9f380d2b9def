#include "lkc/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lkc {

std::string_view to_string(Boundary mode) {
  return mode == Boundary::periodic ? "periodic" : "dirichlet";
}

Boundary boundary_from_string(std::string_view name) {
  if (name == "dirichlet" || name == "dirichlet_zero") return Boundary::dirichlet_zero;
  if (name == "periodic") return Boundary::periodic;
  throw std::invalid_argument("unknown boundary mode '" + std::string(name) + "'");
}

int graph_norm(Index3 x) { return std::abs(x.x1) + std::abs(x.x2) + std::abs(x.x3); }

LatticeBox::LatticeBox(int radius, Boundary mode) : LatticeBox(radius, 2 * radius + 1, mode) {}

LatticeBox::LatticeBox(int radius, int side, Boundary mode)
    : radius_(radius), side_(side), mode_(mode) {
  if (radius < 0) throw std::invalid_argument("box radius must be nonnegative");
  if (side < 1) throw std::invalid_argument("box side must be positive");
}

LatticeBox LatticeBox::even_torus(int radius) {
  if (radius < 1) throw std::invalid_argument("even torus needs radius >= 1");
  return LatticeBox(radius, 2 * radius, Boundary::periodic);
}

bool LatticeBox::contains(Index3 x) const {
  for (int d = 0; d < 3; ++d) {
    if (x[d] < lo() || x[d] > hi()) return false;
  }
  return true;
}

std::size_t LatticeBox::offset(Index3 x) const {
  const auto s = static_cast<std::size_t>(side_);
  return (static_cast<std::size_t>(x.x1 - lo()) * s + static_cast<std::size_t>(x.x2 - lo())) * s +
         static_cast<std::size_t>(x.x3 - lo());
}

Index3 LatticeBox::site(std::size_t offset) const {
  const auto s = static_cast<std::size_t>(side_);
  const int i3 = static_cast<int>(offset % s);
  const int i2 = static_cast<int>((offset / s) % s);
  const int i1 = static_cast<int>(offset / (s * s));
  return {i1 + lo(), i2 + lo(), i3 + lo()};
}

Index3 LatticeBox::wrap(Index3 x) const {
  Index3 r;
  for (int d = 0; d < 3; ++d) {
    int k = (x[d] - lo()) % side_;
    if (k < 0) k += side_;
    r[d] = k + lo();
  }
  return r;
}

Field::Field(const LatticeBox& box, double value) : box_(box), values_(box.site_count(), value) {}

Field::Field(const LatticeBox& box, std::vector<double> values)
    : box_(box), values_(std::move(values)) {
  if (values_.size() != box_.site_count()) {
    throw std::invalid_argument("field value count " + std::to_string(values_.size()) +
                                " does not match box site count " +
                                std::to_string(box_.site_count()));
  }
}

Field Field::delta(const LatticeBox& box, Index3 x, double height) {
  Field f(box);
  f.ref(x) = height;
  return f;
}

double Field::at(Index3 x) const {
  if (box_.contains(x)) return values_[box_.offset(x)];
  if (box_.periodic()) return values_[box_.offset(box_.wrap(x))];
  return 0.0;
}

bool Field::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

void require_same_box(const Field& a, const Field& b) {
  if (!(a.box() == b.box())) throw std::invalid_argument("fields live on different boxes");
}

Field& Field::operator+=(const Field& other) {
  require_same_box(*this, other);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

Field& Field::operator-=(const Field& other) {
  require_same_box(*this, other);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

Field& Field::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(double s, Field a) { return a *= s; }
Field operator*(Field a, double s) { return a *= s; }

double dot(const Field& a, const Field& b) {
  require_same_box(a, b);
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

void axpy(double s, const Field& x, Field& y) {
  require_same_box(x, y);
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += s * x[i];
}

namespace {

// Visits every site with its three forward neighbours. For a neighbour that
// leaves the box, `inside` is false and the offset is meaningful only on a
// torus (where it is the wrapped site).
template <class Visit>
void for_each_forward_edge(const LatticeBox& box, Visit&& visit) {
  const int s = box.side();
  const bool torus = box.periodic();
  const std::size_t stride[3] = {static_cast<std::size_t>(s) * s, static_cast<std::size_t>(s), 1};
  std::size_t off = 0;
  for (int i = 0; i < s; ++i) {
    for (int j = 0; j < s; ++j) {
      for (int k = 0; k < s; ++k, ++off) {
        const int idx[3] = {i, j, k};
        for (int d = 0; d < 3; ++d) {
          if (idx[d] + 1 < s) {
            visit(off, off + stride[d], true);
          } else if (torus) {
            visit(off, off - static_cast<std::size_t>(s - 1) * stride[d], true);
          } else {
            visit(off, off, false);
          }
        }
      }
    }
  }
}

// Number of exterior neighbours of each site on a dirichlet box (faces at lo).
template <class Visit>
void for_each_lower_exterior_edge(const LatticeBox& box, Visit&& visit) {
  if (box.periodic()) return;
  const int s = box.side();
  std::size_t off = 0;
  for (int i = 0; i < s; ++i) {
    for (int j = 0; j < s; ++j) {
      for (int k = 0; k < s; ++k, ++off) {
        const int count = (i == 0) + (j == 0) + (k == 0);
        if (count > 0) visit(off, count);
      }
    }
  }
}

}  // namespace

Field laplacian(const Field& u) {
  const LatticeBox& box = u.box();
  Field out(box);
  // Each forward edge (x, y) adds u(y)-u(x) to x and u(x)-u(y) to y. Edges to
  // the dirichlet exterior add (0 - u(x)) to x only.
  for_each_forward_edge(box, [&](std::size_t x, std::size_t y, bool inside) {
    if (inside) {
      const double diff = u[y] - u[x];
      out[x] += diff;
      out[y] -= diff;
    } else {
      out[x] -= u[x];
    }
  });
  for_each_lower_exterior_edge(box, [&](std::size_t x, int count) { out[x] -= count * u[x]; });
  return out;
}

Field gradient_form(const Field& u, const Field& v) {
  require_same_box(u, v);
  const LatticeBox& box = u.box();
  Field out(box);
  for_each_forward_edge(box, [&](std::size_t x, std::size_t y, bool inside) {
    if (inside) {
      const double g = 0.5 * (u[y] - u[x]) * (v[y] - v[x]);
      out[x] += g;
      out[y] += g;
    } else {
      out[x] += 0.5 * u[x] * v[x];
    }
  });
  for_each_lower_exterior_edge(box, [&](std::size_t x, int count) {
    out[x] += 0.5 * count * u[x] * v[x];
  });
  return out;
}

double gradient_pairing(const Field& u, const Field& v) {
  require_same_box(u, v);
  double sum = 0.0;
  for_each_forward_edge(u.box(), [&](std::size_t x, std::size_t y, bool inside) {
    sum += inside ? (u[y] - u[x]) * (v[y] - v[x]) : u[x] * v[x];
  });
  for_each_lower_exterior_edge(u.box(), [&](std::size_t x, int count) { sum += count * u[x] * v[x]; });
  return sum;
}

double gradient_energy(const Field& u) { return gradient_pairing(u, u); }

double lp_norm(const Field& u, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm requires p >= 1");
  double peak = 0.0;
  for (double v : u.values()) peak = std::max(peak, std::abs(v));
  if (std::isinf(p) || peak == 0.0) return peak;
  double sum = 0.0;
  if (p == 2.0) {
    for (double v : u.values()) sum += (v / peak) * (v / peak);
    return peak * std::sqrt(sum);
  }
  for (double v : u.values()) sum += std::pow(std::abs(v) / peak, p);
  return peak * std::pow(sum, 1.0 / p);
}

double h_inner(const Field& u, const Field& v, double a, const Field& potential) {
  require_same_box(u, v);
  require_same_box(u, potential);
  double mass = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) mass += potential[i] * u[i] * v[i];
  return a * gradient_pairing(u, v) + mass;
}

double h_norm(const Field& u, double a, const Field& potential) {
  return std::sqrt(h_inner(u, u, a, potential));
}

Field apply_h_operator(const Field& u, double a, const Field& potential) {
  require_same_box(u, potential);
  Field out = laplacian(u);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = -a * out[i] + potential[i] * u[i];
  return out;
}

Field translate(const Field& u, Index3 shift) {
  const LatticeBox& box = u.box();
  Field out(box);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = u.at(box.site(i) - shift);
  return out;
}

Index3 OctahedralElement::apply(Index3 x) const {
  return {sign[0] * x[perm[0]], sign[1] * x[perm[1]], sign[2] * x[perm[2]]};
}

const std::array<OctahedralElement, 48>& octahedral_group() {
  static const std::array<OctahedralElement, 48> group = [] {
    std::array<OctahedralElement, 48> g{};
    std::array<int, 3> perm = {0, 1, 2};
    std::size_t n = 0;
    do {
      for (int mask = 0; mask < 8; ++mask) {
        g[n++] = OctahedralElement{perm, {(mask & 1) ? -1 : 1, (mask & 2) ? -1 : 1, (mask & 4) ? -1 : 1}};
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return g;
  }();
  return group;
}

Field octahedral_average(const Field& u, Index3 center) {
  const LatticeBox& box = u.box();
  Field out(box);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Index3 rel = box.site(i) - center;
    double sum = 0.0;
    for (const auto& g : octahedral_group()) sum += u.at(g.apply(rel) + center);
    out[i] = sum / 48.0;
  }
  return out;
}

}  // namespace lkc
