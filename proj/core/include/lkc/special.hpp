#pragma once

#include <span>

namespace lkc {

/// Fills out[n] = log(e^{-x} I_n(x)) for n = 0 .. out.size()-1, with x = exp(log_x).
///
/// Works for any log_x including -inf (x = 0) and values far beyond the
/// double range of x itself. Three regimes: the ascending series for x <= 2,
/// Miller backward recurrence normalised by e^{-x}(I_0 + 2 sum_k I_k) = 1 in
/// the middle, and the Hankel asymptotic series once x >= max(50, 2 n_max^2).
void log_scaled_bessel_i(double log_x, std::span<double> out);

/// e^{-x} I_n(x) for x >= 0.
double scaled_bessel_i(int n, double x);

}  // namespace lkc
