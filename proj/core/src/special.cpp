#include "lkc/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace lkc {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void ascending_series(double log_x, std::span<double> out) {
  const double x = std::exp(log_x);
  const double q = 0.25 * x * x;
  for (std::size_t n = 0; n < out.size(); ++n) {
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 60; ++k) {
      term *= q / (static_cast<double>(k) * static_cast<double>(n + k));
      sum += term;
      if (term < 1e-18 * sum) break;
    }
    const double nd = static_cast<double>(n);
    out[n] = nd * (log_x - std::numbers::ln2) - std::lgamma(nd + 1.0) + std::log(sum) - x;
  }
}

void miller_recurrence(double log_x, std::span<double> out) {
  const double x = std::exp(log_x);
  const int nmax = static_cast<int>(out.size()) - 1;
  const int start = nmax + 20 + static_cast<int>(std::ceil(10.0 * std::sqrt(x)));

  constexpr double kBig = 1e250;
  const double log_rescale = std::log(1.0 / kBig);
  double log_scale = 0.0;  // log of the factor applied so far to all running quantities
  std::vector<double> stored_scale(out.size(), 0.0);

  double next = 0.0;   // i_{k+1}
  double cur = 1e-280; // i_k
  double sum = 0.0;    // i_0 + 2 sum_{j>=1} i_j over j >= k
  for (int k = start; k >= 1; --k) {
    if (k <= nmax) {
      out[static_cast<std::size_t>(k)] = cur;
      stored_scale[static_cast<std::size_t>(k)] = log_scale;
    }
    sum += 2.0 * cur;
    const double prev = next + (2.0 * k / x) * cur;
    next = cur;
    cur = prev;
    if (cur > kBig) {
      next /= kBig;
      cur /= kBig;
      sum /= kBig;
      log_scale += log_rescale;
    }
  }
  out[0] = cur;
  stored_scale[0] = log_scale;
  sum += cur;
  const double log_sum = std::log(sum);
  for (std::size_t n = 0; n < out.size(); ++n) {
    out[n] = out[n] > 0.0 ? std::log(out[n]) - stored_scale[n] - log_sum + log_scale : kNegInf;
  }
}

void hankel_asymptotic(double log_x, std::span<double> out) {
  const double inv_x = std::exp(-log_x);
  const double base = -0.5 * (std::log(2.0 * std::numbers::pi) + log_x);
  for (std::size_t n = 0; n < out.size(); ++n) {
    const double four_n2 = 4.0 * static_cast<double>(n) * static_cast<double>(n);
    double term = 1.0;
    double sum = 1.0;
    double prev_mag = 1.0;
    for (int k = 1; k < 80; ++k) {
      const double odd = 2.0 * k - 1.0;
      term *= -(four_n2 - odd * odd) * inv_x / (8.0 * k);
      const double mag = std::abs(term);
      if (mag > prev_mag) break;  // asymptotic series started to diverge
      sum += term;
      prev_mag = mag;
      if (mag < 1e-18 * std::abs(sum)) break;
    }
    out[n] = base + std::log(sum);
  }
}

}  // namespace

void log_scaled_bessel_i(double log_x, std::span<double> out) {
  if (out.empty()) return;
  if (std::isnan(log_x)) throw std::invalid_argument("log_scaled_bessel_i: NaN argument");
  if (log_x == kNegInf) {
    out[0] = 0.0;
    std::fill(out.begin() + 1, out.end(), kNegInf);
    return;
  }
  const double nmax = static_cast<double>(out.size() - 1);
  const double asymptotic_from = std::max(50.0, 2.0 * nmax * nmax);
  if (log_x <= std::numbers::ln2) {
    ascending_series(log_x, out);
  } else if (log_x < std::log(asymptotic_from)) {
    miller_recurrence(log_x, out);
  } else {
    hankel_asymptotic(log_x, out);
  }
}

double scaled_bessel_i(int n, double x) {
  if (n < 0) n = -n;
  if (x < 0.0) throw std::invalid_argument("scaled_bessel_i: x must be nonnegative");
  std::vector<double> buf(static_cast<std::size_t>(n) + 1);
  log_scaled_bessel_i(x == 0.0 ? kNegInf : std::log(x), buf);
  return std::exp(buf.back());
}

}  // namespace lkc
