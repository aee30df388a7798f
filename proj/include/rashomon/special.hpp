#pragma once

#include <cmath>

namespace rashomon {

/// Standard normal CDF through the complementary error function.
/// erfc keeps the lower tail accurate where 1 - Phi(|x|) would cancel.
template <typename Scalar>
Scalar normal_cdf(Scalar x) {
  using std::erfc;
  using std::sqrt;
  return Scalar(0.5) * erfc(-x / sqrt(Scalar(2)));
}

template <typename Scalar>
Scalar normal_pdf(Scalar x) {
  using std::exp;
  using std::sqrt;
  const Scalar inv_sqrt_2pi = Scalar(0.398942280401432677939946059934L);
  return inv_sqrt_2pi * exp(Scalar(-0.5) * x * x);
}

/// theta_3(0, q) = 1 + 2 * sum_{k>=1} q^{k^2}, for 0 <= q < 1.
double jacobi_theta3(double q);

}  // namespace rashomon
