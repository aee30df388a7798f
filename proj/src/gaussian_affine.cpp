#include "rashomon/gaussian_affine.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>

#include "rashomon/error.hpp"
#include "rashomon/special.hpp"

namespace rashomon {

void GaussianMixture::validate() const {
  if (mu1.size() == 0 || mu1.size() != mu2.size()) throw Error("mixture means must share a positive dimension");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw Error("sigma must be positive");
  if (!(zeta1 > 0.0 && zeta1 < 1.0)) throw Error("zeta1 must lie in (0,1)");
  if (!mu1.allFinite() || !mu2.allFinite()) throw Error("mixture means must be finite");
}

GaussianMixture GaussianMixture::antipodal(const Eigen::VectorXd& mu, double sigma, double zeta1) {
  GaussianMixture gm{-mu, mu, sigma, zeta1};
  gm.validate();
  return gm;
}

GaussianMixture GaussianMixture::antipodal_along_axis(Eigen::Index dim, double distance, double sigma) {
  if (dim < 1) throw Error("dimension must be at least 1");
  if (!(distance >= 0.0)) throw Error("distance must be non-negative");
  Eigen::VectorXd mu = Eigen::VectorXd::Zero(dim);
  mu(0) = distance / 2.0;
  return antipodal(mu, sigma);
}

AffineClassifier AffineClassifier::normalized(const Eigen::VectorXd& p, double t) {
  const double norm = std::sqrt(p.squaredNorm() + t * t);
  if (!(norm > 0.0)) throw Error("cannot normalize the zero classifier");
  return {p / norm, t / norm};
}

AffineClassifier AffineClassifier::from_angle(double theta) {
  return {Eigen::VectorXd::Constant(1, std::sin(theta)), std::cos(theta)};
}

double bayes_error(const GaussianMixture& gm) {
  gm.validate();
  return normal_cdf(-gm.separation() / (2.0 * gm.sigma));
}

double projected_error(const GaussianMixture& gm, const Eigen::VectorXd& p) {
  gm.validate();
  if (p.size() != gm.dim()) throw Error("direction dimension mismatch");
  const double pn = p.norm();
  if (!(pn > 0.0)) throw Error("degenerate direction");
  return normal_cdf(-std::abs(p.dot(gm.mu2 - gm.mu1)) / (2.0 * gm.sigma * pn));
}

double reducible_error(const GaussianMixture& gm, const Eigen::VectorXd& p, double t) {
  gm.validate();
  if (p.size() != gm.dim()) throw Error("classifier dimension mismatch");
  const double pn = p.norm();
  if (!(pn > 0.0)) throw Error("degenerate direction");
  const double proj1 = p.dot(gm.mu1);
  const double proj2 = p.dot(gm.mu2);
  // Tie proj1 == proj2 resolves to zeta1.
  const bool first_is_upper = proj1 >= proj2;
  const double upper = first_is_upper ? proj1 : proj2;
  const double lower = first_is_upper ? proj2 : proj1;
  const double zeta = first_is_upper ? gm.zeta1 : gm.zeta2();
  const double scale = gm.sigma * pn;
  return normal_cdf(gm.separation() / (2.0 * gm.sigma)) - zeta * normal_cdf((upper - t) / scale) -
         (1.0 - zeta) * normal_cdf((t - lower) / scale);
}

double reducible_error(const GaussianMixture& gm, const AffineClassifier& c) {
  return reducible_error(gm, c.p, c.t);
}

double reducible_error_1d(double mu, double sigma, double theta, double zeta) {
  if (!(sigma > 0.0)) throw Error("sigma must be positive");
  if (!(zeta > 0.0 && zeta < 1.0)) throw Error("zeta must lie in (0,1)");
  if (!(theta > 0.0 && theta < std::numbers::pi)) throw Error("sign classifier constant");
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  if (!(s > 0.0)) throw Error("sign classifier constant");
  return normal_cdf(mu / sigma) - zeta * normal_cdf((s * mu - c) / (s * sigma)) -
         (1.0 - zeta) * normal_cdf((c + s * mu) / (s * sigma));
}

int predict_class(const GaussianMixture& gm, const AffineClassifier& c, const Eigen::Ref<const Eigen::VectorXd>& x) {
  const bool first_is_upper = c.p.dot(gm.mu1) >= c.p.dot(gm.mu2);
  const bool above = c.p.dot(x) >= c.t;
  return above == first_is_upper ? 1 : 2;
}

AffineClassifier sample_sphere_uniform(Xoshiro256& rng, Eigen::Index dim) {
  if (dim < 1) throw Error("dimension must be at least 1");
  const Eigen::VectorXd v = uniform_unit_vector(rng, dim + 1);
  return {v.head(dim), v(dim)};
}

std::vector<AffineDraw> draw_affine_classifiers(const GaussianMixture& gm, std::size_t n_draws, std::uint64_t seed) {
  gm.validate();
  if (n_draws == 0) throw Error("no samples");
  std::vector<AffineDraw> draws(n_draws);
  std::vector<std::exception_ptr> failures(n_draws);
  const auto count = static_cast<std::ptrdiff_t>(n_draws);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const auto k = static_cast<std::size_t>(i);
    auto rng = substream(seed, Stream::classifier_draw, k);
    // p = 0 has measure zero; redraw from the same substream.
    try {
      for (;;) {
        auto c = sample_sphere_uniform(rng, gm.dim());
        if (c.p.norm() > 0.0) {
          draws[k] = {c, reducible_error(gm, c)};
          break;
        }
      }
    } catch (...) {
      failures[k] = std::current_exception();
    }
  }
  for (const auto& failure : failures)
    if (failure) std::rethrow_exception(failure);
  return draws;
}

RatioEstimate true_ratio_affine(const GaussianMixture& gm, double gamma, std::size_t n_draws, std::uint64_t seed) {
  if (!(gamma > 0.0)) throw Error("gamma must be positive");
  const auto draws = draw_affine_classifiers(gm, n_draws, seed);
  std::vector<double> losses;
  losses.reserve(draws.size());
  // Unequal priors can push the formula below zero; such draws are inside the set either way.
  for (const auto& d : draws) losses.push_back(std::max(0.0, d.reducible_error));
  return estimate_ratio_mc(std::span<const double>(losses), gamma, LossKind::true_reducible, seed);
}

std::vector<double> distance_grid(double lo, double hi, double step) {
  if (!(step > 0.0)) throw Error("grid step must be positive");
  if (!(lo >= 0.0)) throw Error("distances must be non-negative");
  if (hi < lo) throw Error("empty grid: min exceeds max");
  std::vector<double> grid;
  for (std::size_t i = 0;; ++i) {
    const double x = lo + static_cast<double>(i) * step;
    if (x > hi + 0.5 * step * 1e-9) break;
    grid.push_back(x);
  }
  return grid;
}

RatioCurve ratio_vs_distance_sweep(Eigen::Index dim, double sigma, double gamma, std::size_t n_draws,
                                   std::span<const double> distances, std::uint64_t seed) {
  if (distances.empty()) throw Error("empty grid");
  RatioCurve curve;
  curve.dim = dim;
  curve.sigma = sigma;
  curve.gamma = gamma;
  curve.n_draws = n_draws;
  curve.seed = seed;
  curve.distances.assign(distances.begin(), distances.end());
  curve.ratios.resize(distances.size());
  for (std::size_t j = 0; j < distances.size(); ++j) {
    if (!(distances[j] >= 0.0)) throw Error("distances must be non-negative");
    const auto gm = GaussianMixture::antipodal_along_axis(dim, distances[j], sigma);
    curve.ratios[j] = true_ratio_affine(gm, gamma, n_draws, derive_seed(seed, Stream::sweep_point, j)).value;
  }
  std::size_t best = 0;
  for (std::size_t j = 1; j < curve.ratios.size(); ++j)
    if (curve.ratios[j] < curve.ratios[best]) best = j;
  curve.argmin_distance = curve.distances[best];
  curve.min_ratio = curve.ratios[best];
  return curve;
}

LabeledDataset sample_mixture(const GaussianMixture& gm, Eigen::Index n, std::uint64_t seed) {
  gm.validate();
  if (n < 1) throw Error("sample size must be positive");
  LabeledDataset ds;
  ds.features.resize(n, gm.dim());
  ds.labels.resize(n);
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < n; ++i) {
    auto rng = substream(seed, Stream::mixture_sample, static_cast<std::uint64_t>(i));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const bool first = unit(rng) < gm.zeta1;
    const Eigen::VectorXd noise = standard_normal_vector(rng, gm.dim());
    ds.features.row(i) = ((first ? gm.mu1 : gm.mu2) + gm.sigma * noise).transpose();
    ds.labels(i) = first ? 1.0 : -1.0;
  }
  return ds;
}

double AffineMixtureFamily::loss(const AffineClassifier& c, const LabeledDataset& data,
                                 std::span<const Eigen::Index> rows) const {
  if (rows.empty()) throw Error("no rows to evaluate");
  std::size_t wrong = 0;
  for (Eigen::Index r : rows) {
    const int predicted = predict_class(mixture, c, data.features.row(r).transpose());
    const double label = predicted == 1 ? 1.0 : -1.0;
    if (label != data.labels(r)) ++wrong;
  }
  return static_cast<double>(wrong) / static_cast<double>(rows.size());
}

}  // namespace rashomon
