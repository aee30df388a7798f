#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "rashomon/dataset.hpp"
#include "rashomon/error.hpp"
#include "rashomon/special.hpp"

namespace rashomon {

/// Eigenvalues below this are treated as a violation of positive-definiteness.
inline constexpr double kPositiveDefiniteThreshold = 1e-10;

/// Infinite-width ReLU kernel on unit-norm rows:
/// H_ij = x_i.x_j (pi - arccos(x_i.x_j)) / (2 pi).
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> gram_matrix(
    const Eigen::MatrixBase<Derived>& rows) {
  using Scalar = typename Derived::Scalar;
  using std::atan2;
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const Eigen::Index n = rows.rows();
  const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> x = rows;
  const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> inner = x * x.transpose();
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> h(n, n);
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < n; ++i) {
    // Unit rows: the diagonal is exactly 1/2.
    h(i, i) = Scalar(0.5);
    for (Eigen::Index j = 0; j < i; ++j) {
      const Scalar c = std::clamp(inner(i, j), Scalar(-1), Scalar(1));
      // arccos(c) through the half-angle form. acos loses half its digits near c = 1,
      // which would turn rounding-level duplicate rows into a lambda0 of order 1e-9.
      const Scalar angle = Scalar(2) * atan2((x.row(i) - x.row(j)).norm(), (x.row(i) + x.row(j)).norm());
      const Scalar v = c * (pi - angle) / (Scalar(2) * pi);
      h(i, j) = v;
      h(j, i) = v;
    }
  }
  return h;
}

/// Gram matrix of a normalized dataset; throws if the rows are not unit norm.
Eigen::MatrixXd gram_matrix(const LabeledDataset& dataset);

/// Symmetric eigenvalues by cyclic Jacobi rotations, sorted ascending.
/// Stops when the off-diagonal Frobenius norm is <= tol * ||H||_F.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> jacobi_eigenvalues(const Eigen::MatrixBase<Derived>& input,
                                                                           double tol = 1e-12) {
  using Scalar = typename Derived::Scalar;
  using std::abs;
  using std::sqrt;
  const Eigen::Index n = input.rows();
  if (input.cols() != n) throw Error("matrix must be square");
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a = input;
  const Scalar total = a.norm();
  auto off_norm = [&a, n] {
    Scalar s(0);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        if (i != j) s += a(i, j) * a(i, j);
    return sqrt(s);
  };
  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps && off_norm() > Scalar(tol) * total; ++sweep) {
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Scalar apq = a(p, q);
        if (apq == Scalar(0)) continue;
        // Rotation angle that zeroes a(p,q) (Golub & Van Loan 8.5.2).
        const Scalar tau = (a(q, q) - a(p, p)) / (Scalar(2) * apq);
        const Scalar t = (tau >= Scalar(0) ? Scalar(1) : Scalar(-1)) / (abs(tau) + sqrt(Scalar(1) + tau * tau));
        const Scalar c = Scalar(1) / sqrt(Scalar(1) + t * t);
        const Scalar s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const Scalar akp = a(k, p);
          const Scalar akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Scalar apk = a(p, k);
          const Scalar aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> eig = a.diagonal();
  std::sort(eig.data(), eig.data() + eig.size());
  return eig;
}

struct MinEigenvalue {
  double value = 0.0;
  /// False when value <= kPositiveDefiniteThreshold.
  bool positive_definite = false;
};

/// Smallest eigenvalue of a symmetric matrix; throws on asymmetric input.
MinEigenvalue min_eigenvalue(const Eigen::MatrixXd& h);

struct ComplexityTerm {
  double y_hinv_y = 0.0;
  double epsilon_dominant = 0.0;
};

/// y^T H^{-1} y by Cholesky; refuses when H is not positive-definite.
ComplexityTerm complexity_term(const Eigen::MatrixXd& h, const Eigen::VectorXd& y);

struct GramStats {
  Eigen::MatrixXd h;
  double lambda0 = 0.0;
  double y_hinv_y = 0.0;
  double epsilon_dominant = 0.0;
};

/// Gram matrix, lambda0 and complexity term of a normalized dataset.
GramStats gram_stats(const LabeledDataset& dataset);

enum class Prefactor { statement, proof };

const char* to_string(Prefactor prefactor);

struct BoundInputs {
  int d = 1;
  int m = 1;
  double kappa = 1.0;
  double delta = 0.1;
  double gamma = 0.1;
  double epsilon = 1.0;
};

struct LowerBound {
  double log_value = 0.0;
  double value = 0.0;
};

/// Lower bound on the empirical anchored Rashomon ratio of two-layer ReLU networks,
/// evaluated in log space. Prefactor::proof uses (1 - 3 delta / 2), statement uses (1 - delta).
LowerBound rashomon_lower_bound(const BoundInputs& in, Prefactor prefactor = Prefactor::proof);

struct BoundRow {
  double kappa = 0.0;
  double gamma = 0.0;
  double log_value = 0.0;
  double value = 0.0;
};

/// Inclusive kappa grid lo + i * step; halving step reproduces shared cells exactly.
std::vector<double> kappa_grid(double lo, double hi, double step);

/// One bound per (gamma, kappa) cell, gamma-major.
std::vector<BoundRow> bound_sweep(double epsilon, int d, int m, double delta, std::span<const double> gammas,
                                  std::span<const double> kappas, Prefactor prefactor = Prefactor::proof);

/// Two-layer ReLU network f(x) = m^{-1/2} sum_r a_r max(0, w_r . x).
template <typename Scalar>
struct ReluNet {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> w;  // m x d, row r is w_r
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> a;               // m, entries +/-1

  Eigen::Index width() const { return w.rows(); }
};

template <typename Scalar, typename Derived>
Scalar relu_eval(const ReluNet<Scalar>& net, const Eigen::MatrixBase<Derived>& x) {
  using std::sqrt;
  if (x.size() != net.w.cols() || net.a.size() != net.w.rows()) throw Error("dimension mismatch");
  const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> pre = net.w * x;
  return net.a.dot(pre.cwiseMax(Scalar(0))) / sqrt(static_cast<Scalar>(net.width()));
}

}  // namespace rashomon
