#include "rashomon/subset_selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "rashomon/error.hpp"
#include "rashomon/random.hpp"

namespace rashomon {

namespace {

void require_probability(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw Error("delta must lie in (0,1)");
}

// (1 - ratio)^n <= delta, in logs.
bool subset_hits(double ratio, double delta, std::size_t n) {
  return static_cast<double>(n) * std::log1p(-ratio) <= std::log(delta);
}

}  // namespace

double min_ratio_for_subset(std::size_t n_subset, double delta) {
  if (n_subset == 0) throw Error("subset size must be at least 1");
  require_probability(delta);
  // 1 - delta^{1/N} without cancellation for large N, then nudged up by ulps until
  // (1 - ratio)^N <= delta holds in the arithmetic required_subset_size uses.
  double ratio = -std::expm1(std::log(delta) / static_cast<double>(n_subset));
  while (!subset_hits(ratio, delta, n_subset)) ratio = std::nextafter(ratio, 1.0);
  return ratio;
}

std::size_t required_subset_size(double ratio, double delta) {
  require_probability(delta);
  if (!(ratio >= 0.0 && ratio <= 1.0)) throw Error("ratio must lie in [0,1]");
  if (ratio == 0.0) throw Error("no finite subset suffices");
  if (ratio == 1.0) return 1;
  const double raw = std::log(delta) / std::log1p(-ratio);
  auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(raw)));
  while (n > 1 && subset_hits(ratio, delta, n - 1)) --n;
  while (!subset_hits(ratio, delta, n)) ++n;
  return n;
}

SubsetPlan plan_subset(double ratio, double delta) {
  SubsetPlan plan;
  plan.ratio = ratio;
  plan.delta = delta;
  plan.n_subset = required_subset_size(ratio, delta);
  plan.raw_size = ratio < 1.0 ? std::log(delta) / std::log1p(-ratio) : 0.0;
  return plan;
}

double membership_transfer_bound(std::size_t n, double epsilon, double b) {
  if (n == 0) throw Error("n must be positive");
  if (epsilon < 0.0 || !(b > 0.0)) throw Error("epsilon must be non-negative and b positive");
  const double r = epsilon / b;
  return -std::expm1(-2.0 * static_cast<double>(n) * r * r);
}

GeneralizationDelta vc_delta(std::size_t n, double d_vc, double b, double delta) {
  if (!(d_vc >= 1.0)) throw Error("VC dimension must be at least 1");
  if (!(static_cast<double>(n) > d_vc)) throw Error("n must exceed the VC dimension");
  if (!(b > 0.0)) throw Error("b must be positive");
  require_probability(delta);
  const double nd = static_cast<double>(n);
  const double inner = (d_vc * (std::log(2.0 * nd / d_vc) + 1.0) - std::log(delta / 4.0)) / nd;
  return {DeltaKind::vc, b * std::sqrt(inner), n, b, delta, d_vc};
}

GeneralizationDelta growth_delta(std::size_t n, double growth_at_2n, double delta) {
  if (n == 0) throw Error("n must be positive");
  if (!(growth_at_2n >= 1.0)) throw Error("growth function must be at least 1");
  if (!(delta > 0.0)) throw Error("delta must be positive");
  const double inner = std::log(4.0 * growth_at_2n / delta);
  if (inner < 0.0) throw Error("4 * growth / delta must be at least 1");
  return {DeltaKind::growth, std::sqrt(8.0 / static_cast<double>(n) * inner), n, 1.0, delta, growth_at_2n};
}

double tarp_growth(std::size_t n, std::size_t n_directions) {
  return 4.0 * static_cast<double>(n) * static_cast<double>(n_directions);
}

LossInterval theorem5_sandwich(double inf_true_loss_f2, double gamma, double delta, std::size_t n, double b,
                               const GeneralizationDelta& delta_term) {
  if (n == 0) throw Error("n must be positive");
  if (gamma < 0.0 || !(b > 0.0)) throw Error("gamma must be non-negative and b positive");
  require_probability(delta);
  const double concentration = b * std::sqrt(std::log(1.0 / delta) / (2.0 * static_cast<double>(n)));
  LossInterval out;
  out.lower = inf_true_loss_f2 - delta_term.value;
  out.upper = inf_true_loss_f2 + gamma + concentration;
  out.caveat = "each side holds w.p. >= 1-delta separately; both together w.p. >= 1-2*delta by union bound; "
               "upper side assumes F1 meets the gamma-Rashomon set of F2";
  return out;
}

double TarpModel::predict(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  const double z = directions.row(best_index).dot(x);
  const bool above = z > best_threshold;
  return (above == (best_orientation > 0)) ? 1.0 : -1.0;
}

namespace {

struct ThresholdChoice {
  std::size_t errors = std::numeric_limits<std::size_t>::max();
  double threshold = 0.0;
  int orientation = 1;
};

// Best threshold on one projection. Candidates: -inf, midpoints between consecutive
// distinct values, +inf, scanned in ascending order.
ThresholdChoice best_threshold(const Eigen::VectorXd& proj, const Eigen::VectorXd& labels) {
  const auto n = static_cast<std::size_t>(proj.size());
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&proj](std::size_t a, std::size_t b) {
    return proj(static_cast<Eigen::Index>(a)) < proj(static_cast<Eigen::Index>(b));
  });

  std::size_t total_negative = 0;
  for (std::size_t i = 0; i < n; ++i) total_negative += labels(static_cast<Eigen::Index>(i)) < 0 ? 1 : 0;

  ThresholdChoice best;
  // Orientation +1 errs on positives below and negatives above the threshold.
  std::size_t positives_below = 0;
  std::size_t negatives_below = 0;
  auto consider = [&](double threshold) {
    const std::size_t plus = positives_below + (total_negative - negatives_below);
    const std::size_t minus = n - plus;
    if (plus < best.errors) best = {plus, threshold, 1};
    if (minus < best.errors) best = {minus, threshold, -1};
  };

  consider(-std::numeric_limits<double>::infinity());
  for (std::size_t k = 0; k < n; ++k) {
    const auto idx = static_cast<Eigen::Index>(order[k]);
    if (labels(idx) > 0) ++positives_below;
    else ++negatives_below;
    if (k + 1 < n) {
      const double here = proj(idx);
      const double next = proj(static_cast<Eigen::Index>(order[k + 1]));
      if (next > here) consider(here + 0.5 * (next - here));
    }
  }
  consider(std::numeric_limits<double>::infinity());
  return best;
}

}  // namespace

TarpModel tarp_train(const LabeledDataset& dataset, std::size_t n_directions, std::uint64_t seed) {
  if (n_directions == 0) throw Error("number of directions must be at least 1");
  if (dataset.size() == 0) throw Error("empty dataset");
  if (!has_sign_labels(dataset)) throw Error("TARP requires labels in {-1, +1}");

  const Eigen::Index d = dataset.dim();
  const auto count = static_cast<Eigen::Index>(n_directions);
  TarpModel model;
  model.directions.resize(count, d);
  std::vector<ThresholdChoice> choices(n_directions);
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < count; ++i) {
    auto rng = substream(seed, Stream::tarp_direction, static_cast<std::uint64_t>(i));
    const Eigen::VectorXd a = uniform_unit_vector(rng, d);
    model.directions.row(i) = a.transpose();
    choices[static_cast<std::size_t>(i)] = best_threshold(dataset.features * a, dataset.labels);
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < choices.size(); ++i)
    if (choices[i].errors < choices[best].errors) best = i;
  model.best_index = static_cast<Eigen::Index>(best);
  model.best_threshold = choices[best].threshold;
  model.best_orientation = choices[best].orientation;
  model.train_error = static_cast<double>(choices[best].errors) / static_cast<double>(dataset.size());
  return model;
}

double tarp_error(const TarpModel& model, const LabeledDataset& dataset) {
  if (dataset.size() == 0) throw Error("empty dataset");
  std::size_t wrong = 0;
  for (Eigen::Index i = 0; i < dataset.size(); ++i)
    if (model.predict(dataset.features.row(i).transpose()) != dataset.labels(i)) ++wrong;
  return static_cast<double>(wrong) / static_cast<double>(dataset.size());
}

LossInterval tarp_bound(std::size_t n, std::size_t n_directions, double delta, double inf_true_loss_f2,
                        double gamma) {
  if (n_directions == 0) throw Error("number of directions must be at least 1");
  return theorem5_sandwich(inf_true_loss_f2, gamma, delta, n, 1.0,
                           growth_delta(n, tarp_growth(n, n_directions), delta));
}

}  // namespace rashomon
