#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "rashomon/core_measures.hpp"
#include "rashomon/dataset.hpp"
#include "rashomon/random.hpp"

namespace rashomon {

/// Two isotropic Gaussians N(mu1, sigma^2 I), N(mu2, sigma^2 I) with priors zeta1, 1 - zeta1.
struct GaussianMixture {
  Eigen::VectorXd mu1;
  Eigen::VectorXd mu2;
  double sigma = 1.0;
  double zeta1 = 0.5;

  /// Means +/- mu.
  static GaussianMixture antipodal(const Eigen::VectorXd& mu, double sigma, double zeta1 = 0.5);
  /// Antipodal mixture in R^dim with the means `distance` apart along the first axis.
  static GaussianMixture antipodal_along_axis(Eigen::Index dim, double distance, double sigma);

  Eigen::Index dim() const { return mu1.size(); }
  double zeta2() const { return 1.0 - zeta1; }
  /// ||mu2 - mu1||.
  double separation() const { return (mu2 - mu1).norm(); }
  bool equal_priors() const { return zeta1 == 0.5; }
  void validate() const;
};

/// Point (p, t) of S^d. The decision boundary is p.x = t; the half-space p.x >= t
/// is assigned to the class whose projected mean is larger, matching the
/// reducible-error formula.
struct AffineClassifier {
  Eigen::VectorXd p;
  double t = 0.0;

  /// Rescales (p, t) onto the unit sphere.
  static AffineClassifier normalized(const Eigen::VectorXd& p, double t);
  /// d = 1 parametrization p = sin(theta), t = cos(theta).
  static AffineClassifier from_angle(double theta);

  Eigen::Index dim() const { return p.size(); }
};

/// Phi(-||mu2 - mu1|| / (2 sigma)). Priors are ignored, as in the closed form.
double bayes_error(const GaussianMixture& gm);

/// Optimal error after projecting onto p: Phi(-|p.(mu2-mu1)| / (2 sigma ||p||)).
double projected_error(const GaussianMixture& gm, const Eigen::VectorXd& p);

/// Excess error of the affine classifier over the Bayes error.
/// Non-negative for equal priors; unequal priors can give negative values because
/// the Bayes term ignores priors.
double reducible_error(const GaussianMixture& gm, const AffineClassifier& c);
double reducible_error(const GaussianMixture& gm, const Eigen::VectorXd& p, double t);

/// Antipodal d = 1 form in the angle theta in (0, pi); zeta weights the class at +mu.
double reducible_error_1d(double mu, double sigma, double theta, double zeta);

/// 1 for the class with the larger projected mean when p.x >= t, else 2.
/// Ties in the projected means resolve to class 1.
int predict_class(const GaussianMixture& gm, const AffineClassifier& c, const Eigen::Ref<const Eigen::VectorXd>& x);

/// Uniform draw on S^d: returns a classifier with p in R^dim and offset t.
AffineClassifier sample_sphere_uniform(Xoshiro256& rng, Eigen::Index dim);

struct AffineDraw {
  AffineClassifier classifier;
  double reducible_error = 0.0;
};

/// N uniform sphere draws with analytic reducible errors; draw i uses substream i.
std::vector<AffineDraw> draw_affine_classifiers(const GaussianMixture& gm, std::size_t n_draws, std::uint64_t seed);

/// Monte-Carlo true Rashomon ratio of the affine family under the uniform sphere measure.
RatioEstimate true_ratio_affine(const GaussianMixture& gm, double gamma, std::size_t n_draws, std::uint64_t seed);

struct RatioCurve {
  std::vector<double> distances;
  std::vector<double> ratios;
  Eigen::Index dim = 1;
  double sigma = 1.0;
  double gamma = 0.0;
  std::size_t n_draws = 0;
  std::uint64_t seed = 0;
  double argmin_distance = 0.0;
  double min_ratio = 1.0;
};

/// Inclusive grid lo, lo + step, ... <= hi (with a half-step tolerance on the end).
std::vector<double> distance_grid(double lo, double hi, double step);

/// One true_ratio_affine per grid distance; point j uses its own derived seed.
RatioCurve ratio_vs_distance_sweep(Eigen::Index dim, double sigma, double gamma, std::size_t n_draws,
                                   std::span<const double> distances, std::uint64_t seed);

/// n labeled points from the mixture; class 1 -> label +1, class 2 -> label -1.
LabeledDataset sample_mixture(const GaussianMixture& gm, Eigen::Index n, std::uint64_t seed);

/// Affine family on mixture data with 0-1 loss, sampled uniformly on the sphere.
struct AffineMixtureFamily {
  using Model = AffineClassifier;
  GaussianMixture mixture;

  AffineClassifier sample(Xoshiro256& rng) const { return sample_sphere_uniform(rng, mixture.dim()); }
  double loss(const AffineClassifier& c, const LabeledDataset& data, std::span<const Eigen::Index> rows) const;
  double loss_bound() const { return 1.0; }
};

}  // namespace rashomon
