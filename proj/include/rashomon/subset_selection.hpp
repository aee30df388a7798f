#pragma once

#include <cstdint>
#include <string>

#include <Eigen/Core>

#include "rashomon/dataset.hpp"

namespace rashomon {

/// Random-subset sizing: (1 - ratio)^n_subset <= delta.
struct SubsetPlan {
  double ratio = 0.0;
  double delta = 0.0;
  std::size_t n_subset = 0;
  /// ln(delta) / ln(1 - ratio) before rounding.
  double raw_size = 0.0;
};

/// Smallest Rashomon ratio for which n_subset random draws hit the set w.p. >= 1 - delta.
double min_ratio_for_subset(std::size_t n_subset, double delta);

/// Smallest N with (1 - ratio)^N <= delta.
std::size_t required_subset_size(double ratio, double delta);

SubsetPlan plan_subset(double ratio, double delta);

/// 1 - exp(-2 n (eps/b)^2): a true anchored member at level eta is an empirical member at eta + eps.
double membership_transfer_bound(std::size_t n, double epsilon, double b);

enum class DeltaKind { vc, growth };

struct GeneralizationDelta {
  DeltaKind kind = DeltaKind::vc;
  double value = 0.0;
  std::size_t n = 0;
  double b = 1.0;
  double delta = 0.0;
  /// d_VC for vc, m_F1(2n) for growth.
  double complexity = 0.0;
};

GeneralizationDelta vc_delta(std::size_t n, double d_vc, double b, double delta);
GeneralizationDelta growth_delta(std::size_t n, double growth_at_2n, double delta);

/// Growth function of TARP's family with N directions at 2n points: 4 n N.
double tarp_growth(std::size_t n, std::size_t n_directions);

struct LossInterval {
  double lower = 0.0;
  double upper = 0.0;
  /// Each side holds with probability >= 1 - delta; the two are not union-bounded.
  std::string caveat;

  double width() const { return upper - lower; }
  bool contains(double x) const { return lower <= x && x <= upper; }
};

/// Sandwich for the best empirical loss in F1 when F1 meets the gamma-Rashomon set of F2.
LossInterval theorem5_sandwich(double inf_true_loss_f2, double gamma, double delta, std::size_t n, double b,
                               const GeneralizationDelta& delta_term);

/// Thresholding after random projection.
struct TarpModel {
  Eigen::MatrixXd directions;  // N x d, unit rows
  Eigen::Index best_index = 0;
  double best_threshold = 0.0;
  /// +1: predict +1 when the projection exceeds the threshold; -1: the reverse.
  int best_orientation = 1;
  double train_error = 0.0;

  double predict(const Eigen::Ref<const Eigen::VectorXd>& x) const;
};

/// Draws N uniform directions and keeps the (direction, threshold, orientation)
/// with least training 0-1 error. Ties go to the lowest direction index, then the
/// lowest threshold, then orientation +1.
TarpModel tarp_train(const LabeledDataset& dataset, std::size_t n_directions, std::uint64_t seed);

/// 0-1 error of a fitted model on any dataset.
double tarp_error(const TarpModel& model, const LabeledDataset& dataset);

/// Interval for TARP's empirical loss (b = 1, growth 4 n N).
LossInterval tarp_bound(std::size_t n, std::size_t n_directions, double delta, double inf_true_loss_f2,
                        double gamma);

}  // namespace rashomon
