#include "rashomon/relu_bound.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <limits>

namespace rashomon {

double jacobi_theta3(double q) {
  if (!(q >= 0.0)) throw Error("theta3 nome must be non-negative");
  if (q >= 1.0) throw Error("divergent");
  double sum = 1.0;
  for (long k = 1;; ++k) {
    const double term = 2.0 * std::pow(q, static_cast<double>(k * k));
    if (term < 1e-16 * sum) break;
    sum += term;
  }
  return sum;
}

Eigen::MatrixXd gram_matrix(const LabeledDataset& dataset) {
  if (!dataset.normalized) throw Error("gram matrix requires a normalized dataset");
  for (Eigen::Index i = 0; i < dataset.size(); ++i)
    if (std::abs(dataset.features.row(i).norm() - 1.0) > 1e-10)
      throw Error("row " + std::to_string(i) + " is not unit norm");
  return gram_matrix(dataset.features);
}

MinEigenvalue min_eigenvalue(const Eigen::MatrixXd& h) {
  if (h.rows() != h.cols() || h.rows() == 0) throw Error("matrix must be square and non-empty");
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if (((h - h.transpose()).cwiseAbs().array() > 1e-12 * scale).any()) throw Error("matrix is not symmetric");
  const double lambda0 = jacobi_eigenvalues(h)(0);
  return {lambda0, lambda0 > kPositiveDefiniteThreshold};
}

ComplexityTerm complexity_term(const Eigen::MatrixXd& h, const Eigen::VectorXd& y) {
  if (y.size() != h.rows()) throw Error("label vector size mismatch");
  if (!min_eigenvalue(h).positive_definite) throw Error("H not positive-definite");
  const Eigen::LLT<Eigen::MatrixXd> llt(h);
  if (llt.info() != Eigen::Success) throw Error("H not positive-definite");
  const Eigen::VectorXd z = llt.solve(y);
  const double q = y.dot(z);
  return {q, std::sqrt(std::max(0.0, q))};
}

GramStats gram_stats(const LabeledDataset& dataset) {
  GramStats stats;
  stats.h = gram_matrix(dataset);
  stats.lambda0 = min_eigenvalue(stats.h).value;
  const auto term = complexity_term(stats.h, dataset.labels);
  stats.y_hinv_y = term.y_hinv_y;
  stats.epsilon_dominant = term.epsilon_dominant;
  return stats;
}

const char* to_string(Prefactor prefactor) {
  return prefactor == Prefactor::proof ? "proof" : "statement";
}

LowerBound rashomon_lower_bound(const BoundInputs& in, Prefactor prefactor) {
  if (in.d < 1 || in.m < 1) throw Error("d and m must be positive");
  if (!(in.kappa > 0.0)) throw Error("kappa must be positive");
  if (!(in.gamma > 0.0)) throw Error("gamma must be positive");
  if (!(in.epsilon > in.gamma / 2.0)) throw Error("bound precondition violated: epsilon must exceed gamma/2");
  if (!(in.delta > 0.0 && in.delta < 1.0)) throw Error("delta must lie in (0,1)");
  if (prefactor == Prefactor::proof && !(in.delta < 2.0 / 3.0))
    throw Error("delta must be below 2/3 for the (1 - 3 delta/2) prefactor");

  const double dm = static_cast<double>(in.d) * static_cast<double>(in.m);
  const double half = dm / 2.0;
  const double k2 = in.kappa * in.kappa;
  const double e2 = in.epsilon * in.epsilon;
  const double pre = prefactor == Prefactor::proof ? 1.0 - 1.5 * in.delta : 1.0 - in.delta;
  const double theta = jacobi_theta3(std::exp(-9.0 * e2 / (2.0 * k2)));

  const double log_value = std::log(pre) + half * std::numbers::ln2 - std::log(in.kappa) -
                           std::lgamma(half + 1.0) + half * std::log(in.gamma / 2.0) - e2 / (2.0 * k2) +
                           dm * std::log(0.5 * (theta + 1.0));
  return {log_value, std::exp(log_value)};
}

std::vector<double> kappa_grid(double lo, double hi, double step) {
  if (!(lo > 0.0)) throw Error("kappa must be positive");
  if (hi < lo) throw Error("empty kappa grid: min exceeds max");
  if (hi == lo) return {lo};
  if (!(step > 0.0)) throw Error("kappa step must be positive");
  std::vector<double> grid;
  for (std::size_t i = 0;; ++i) {
    const double k = lo + static_cast<double>(i) * step;
    if (k > hi + step * 1e-9) break;
    grid.push_back(k);
  }
  return grid;
}

std::vector<BoundRow> bound_sweep(double epsilon, int d, int m, double delta, std::span<const double> gammas,
                                  std::span<const double> kappas, Prefactor prefactor) {
  if (gammas.empty() || kappas.empty()) throw Error("empty bound grid");
  std::vector<BoundRow> rows;
  rows.reserve(gammas.size() * kappas.size());
  for (double gamma : gammas) {
    for (double kappa : kappas) {
      const auto lb = rashomon_lower_bound({d, m, kappa, delta, gamma, epsilon}, prefactor);
      rows.push_back({kappa, gamma, lb.log_value, lb.value});
    }
  }
  return rows;
}

}  // namespace rashomon
