#pragma once

// Independent reference computations used only by the tests. Nothing here calls
// into the library paths it is used to check.

#include <cmath>
#include <cstdint>
#include <random>

#include <Eigen/Core>

namespace oracle {

/// Phi(x) in long double. erf by the positive-term series
/// erf(z) = 2/sqrt(pi) e^{-z^2} sum_k 2^k z^{2k+1} / (2k+1)!!, and the
/// Laplace continued fraction for the far lower tail.
inline long double normal_cdf(long double x) {
  const long double pi = 3.141592653589793238462643383279502884L;
  const long double z = std::fabs(x) / std::sqrt(2.0L);
  if (z > 5.0L) {
    // erfc(z) = e^{-z^2}/sqrt(pi) * 1/(z + 1/2/(z + 1/(z + 3/2/(z + ...))))
    long double cf = z;
    for (int k = 200; k >= 1; --k) cf = z + (k / 2.0L) / cf;
    const long double erfc_z = std::exp(-z * z) / std::sqrt(pi) / cf;
    return x < 0 ? 0.5L * erfc_z : 1.0L - 0.5L * erfc_z;
  }
  long double term = z;
  long double sum = z;
  for (int k = 1; k < 400; ++k) {
    term *= 2.0L * z * z / (2.0L * k + 1.0L);
    sum += term;
    if (term < 1e-30L * sum) break;
  }
  const long double erf_z = 2.0L / std::sqrt(pi) * std::exp(-z * z) * sum;
  return x < 0 ? 0.5L * (1.0L - erf_z) : 0.5L * (1.0L + erf_z);
}

/// Number of eigenvalues of symmetric a strictly below x, by Sylvester inertia of
/// the LDL^T factorization of a - x I (no pivoting; a zero pivot is nudged).
inline int count_below(const Eigen::MatrixXd& a, long double x) {
  const Eigen::Index n = a.rows();
  Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic> m = a.cast<long double>();
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) -= x;
  int negatives = 0;
  for (Eigen::Index k = 0; k < n; ++k) {
    long double pivot = m(k, k);
    if (pivot == 0.0L) pivot = 1e-300L;
    if (pivot < 0) ++negatives;
    for (Eigen::Index i = k + 1; i < n; ++i) {
      const long double f = m(i, k) / pivot;
      for (Eigen::Index j = k + 1; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return negatives;
}

/// Smallest eigenvalue by bisection on the inertia count.
inline double min_eigenvalue_bisection(const Eigen::MatrixXd& a, int iterations = 200) {
  const long double r = a.cwiseAbs().rowwise().sum().maxCoeff();  // Gershgorin radius bound
  long double lo = -r - 1.0L;
  long double hi = r + 1.0L;
  for (int it = 0; it < iterations && hi - lo > 1e-18L; ++it) {
    const long double mid = 0.5L * (lo + hi);
    if (count_below(a, mid) >= 1) hi = mid;
    else lo = mid;
  }
  return static_cast<double>(0.5L * (lo + hi));
}

/// theta_3(0, q) by direct summation of the first `terms` powers.
inline long double theta3_direct(long double q, int terms = 30) {
  long double sum = 1.0L;
  for (int k = 1; k <= terms; ++k) sum += 2.0L * std::pow(q, static_cast<long double>(k) * k);
  return sum;
}

/// Gamma(D/2 + 1) by the finite product (half-integer case through sqrt(pi)).
inline long double gamma_half_plus_one(int dm) {
  const long double pi = 3.141592653589793238462643383279502884L;
  long double g = 1.0L;
  if (dm % 2 == 0) {
    for (int k = 2; k <= dm / 2; ++k) g *= k;
  } else {
    // Gamma(k + 1/2) = (2k-1)!! / 2^k sqrt(pi), here with k = (dm + 1) / 2.
    g = std::sqrt(pi);
    for (int j = 1; j <= dm; j += 2) g *= j / 2.0L;
  }
  return g;
}

/// The ReLU Rashomon lower bound as a straight product in long double.
inline long double relu_lower_bound_direct(int d, int m, long double kappa, long double delta, long double gamma,
                                           long double epsilon, bool proof_prefactor) {
  const int dm = d * m;
  const long double pre = proof_prefactor ? 1.0L - 1.5L * delta : 1.0L - delta;
  long double two_pow = 1.0L;
  long double gamma_pow = 1.0L;
  long double bracket_pow = 1.0L;
  const long double q = std::exp(-9.0L * epsilon * epsilon / (2.0L * kappa * kappa));
  const long double bracket = 0.5L * (theta3_direct(q) + 1.0L);
  for (int k = 0; k < dm; ++k) bracket_pow *= bracket;
  // (2 * gamma/2)^{dm/2} = gamma^{dm/2}, kept as separate factors on purpose.
  for (int k = 0; k < dm; ++k) {
    two_pow *= std::sqrt(2.0L);
    gamma_pow *= std::sqrt(gamma / 2.0L);
  }
  return pre * two_pow / (kappa * gamma_half_plus_one(dm)) * gamma_pow *
         std::exp(-epsilon * epsilon / (2.0L * kappa * kappa)) * bracket_pow;
}

/// Monte-Carlo H_ij = E_w[x_i.x_j 1{w.x_i >= 0, w.x_j >= 0}] over standard normal w.
inline double gram_entry_mc(const Eigen::VectorXd& xi, const Eigen::VectorXd& xj, long samples, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal;
  long hits = 0;
  Eigen::VectorXd w(xi.size());
  for (long s = 0; s < samples; ++s) {
    for (Eigen::Index k = 0; k < w.size(); ++k) w(k) = normal(gen);
    if (w.dot(xi) >= 0 && w.dot(xj) >= 0) ++hits;
  }
  return xi.dot(xj) * static_cast<double>(hits) / static_cast<double>(samples);
}

/// Simulated reducible error of the boundary p.x = t (upper side to the class with the
/// larger projected mean) on an equal-prior antipodal mixture +/- mu: labeled
/// points are drawn, the misclassification rate is measured, and Phi(-|mu|/sigma)
/// is subtracted. Parallel over fixed chunks with their own generators.
inline double simulated_reducible_error(const Eigen::VectorXd& mu, double sigma, const Eigen::VectorXd& p, double t,
                                        long samples, std::uint64_t seed) {
  const bool plus_is_upper = p.dot(mu) >= p.dot(-mu);
  constexpr long kChunks = 64;
  long wrong_total = 0;
  const double pm = p.dot(mu);
  const double pn = p.norm();
#pragma omp parallel for reduction(+ : wrong_total) schedule(static)
  for (long chunk = 0; chunk < kChunks; ++chunk) {
    std::mt19937_64 gen(seed * 1000003ULL + static_cast<std::uint64_t>(chunk));
    std::normal_distribution<double> normal;
    std::bernoulli_distribution coin(0.5);
    const long begin = samples * chunk / kChunks;
    const long end = samples * (chunk + 1) / kChunks;
    long wrong = 0;
    for (long s = begin; s < end; ++s) {
      const bool plus = coin(gen);
      // p.x = +/- p.mu + sigma ||p|| z for isotropic noise.
      const double proj = (plus ? pm : -pm) + sigma * pn * normal(gen);
      const bool upper_side = proj >= t;
      const bool predicted_plus = upper_side == plus_is_upper;
      if (predicted_plus != plus) ++wrong;
    }
    wrong_total += wrong;
  }
  const double error = static_cast<double>(wrong_total) / static_cast<double>(samples);
  return error - static_cast<double>(normal_cdf(-static_cast<long double>(mu.norm()) / sigma));
}

}  // namespace oracle
