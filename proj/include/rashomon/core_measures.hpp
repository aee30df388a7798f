#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <exception>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "rashomon/dataset.hpp"
#include "rashomon/error.hpp"
#include "rashomon/random.hpp"

namespace rashomon {

enum class LossKind { true_reducible, true_anchored, empirical_anchored };

const char* to_string(LossKind kind);

struct LossSample {
  double loss = 0.0;
  LossKind kind = LossKind::true_reducible;
};

/// Fraction of N sampled classifiers whose loss lies in the closed sublevel set {loss <= gamma}.
struct RatioEstimate {
  double value = 0.0;
  double gamma = 0.0;
  std::size_t n_samples = 0;
  std::size_t n_inside = 0;
  std::uint64_t seed = 0;
  LossKind kind = LossKind::true_reducible;
};

enum class Guarantee { hoeffding_true, hoeffding_anchored, split_statement, split_proof };

const char* to_string(Guarantee kind);

struct ConfidenceReport {
  double epsilon = 0.0;
  double delta = 1.0;
  std::optional<std::size_t> n_data;
  double loss_bound_b = 1.0;
  Guarantee guarantee_kind = Guarantee::hoeffding_true;
};

enum class Theorem3Variant { statement, proof };

RatioEstimate estimate_ratio_mc(std::span<const LossSample> losses, double gamma, std::uint64_t seed = 0);

/// Same count over plain loss values of a single kind.
RatioEstimate estimate_ratio_mc(std::span<const double> losses, double gamma, LossKind kind,
                                std::uint64_t seed = 0);

/// P(|estimate - ratio| >= eps) <= min(1, 2 exp(-2 N eps^2)).
double hoeffding_ratio_bound(std::size_t n_samples, double epsilon);

/// Hoeffding report for a true or anchored ratio estimate.
ConfidenceReport hoeffding_report(std::size_t n_samples, double epsilon, Guarantee kind = Guarantee::hoeffding_true);

/// Half-width eps with 2 exp(-2 N eps^2) = delta.
double hoeffding_epsilon(std::size_t n_samples, double delta);

/// Smallest N with 2 exp(-2 N eps^2) <= delta.
std::size_t required_mc_samples(double epsilon, double delta);

/// Probability that the split-data empirical anchored estimate is sandwiched between
/// the true anchored ratios at gamma -/+ epsilon, widened by eta.
double theorem3_guarantee(std::size_t n, std::size_t n_classifiers, double epsilon, double eta, double b,
                          Theorem3Variant variant = Theorem3Variant::proof);

ConfidenceReport theorem3_report(std::size_t n, std::size_t n_classifiers, double epsilon, double eta, double b,
                                 Theorem3Variant variant = Theorem3Variant::proof);

/// Row index chunks for the split estimator: N disjoint equisized chunks of a
/// seed-shuffled permutation; the n mod N trailing rows are discarded.
std::vector<std::vector<Eigen::Index>> split_rows(Eigen::Index n, std::size_t n_chunks, std::uint64_t seed);

/// A classifier family that can be sampled under rho and scored on dataset rows.
template <class F>
concept ClassifierFamily = requires(const F& family, Xoshiro256& rng, const typename F::Model& model,
                                    const LabeledDataset& data, std::span<const Eigen::Index> rows) {
  typename F::Model;
  { family.sample(rng) } -> std::convertible_to<typename F::Model>;
  { family.loss(model, data, rows) } -> std::convertible_to<double>;
  { family.loss_bound() } -> std::convertible_to<double>;
};

/// Empirical anchored Rashomon ratio from N i.i.d. draws. With split, classifier i
/// is scored only on the i-th disjoint data chunk.
template <ClassifierFamily Family>
RatioEstimate estimate_empirical_anchored_ratio(const LabeledDataset& dataset, const Family& family,
                                                std::size_t n_classifiers, double gamma, bool split,
                                                std::uint64_t seed) {
  if (n_classifiers == 0) throw Error("no samples");
  if (!(gamma > 0.0)) throw Error("gamma must be positive");
  const Eigen::Index n = dataset.size();
  if (split && n < static_cast<Eigen::Index>(n_classifiers)) throw Error("insufficient data for splitting");

  std::vector<std::vector<Eigen::Index>> chunks;
  std::vector<Eigen::Index> all_rows;
  if (split) {
    chunks = split_rows(n, n_classifiers, seed);
  } else {
    all_rows.resize(static_cast<std::size_t>(n));
    std::iota(all_rows.begin(), all_rows.end(), Eigen::Index{0});
  }

  const double bound = family.loss_bound();
  const auto count = static_cast<std::ptrdiff_t>(n_classifiers);
  std::vector<double> losses(n_classifiers);
  std::vector<std::exception_ptr> failures(n_classifiers);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      auto rng = substream(seed, Stream::classifier_draw, k);
      const auto model = family.sample(rng);
      std::span<const Eigen::Index> rows = split ? std::span<const Eigen::Index>(chunks[k]) : all_rows;
      losses[k] = family.loss(model, dataset, rows);
    } catch (...) {
      failures[k] = std::current_exception();
    }
  }
  for (const auto& failure : failures)
    if (failure) std::rethrow_exception(failure);
  for (double loss : losses)
    if (loss > bound) throw Error("loss exceeds declared bound");

  return estimate_ratio_mc(std::span<const double>(losses), gamma, LossKind::empirical_anchored, seed);
}

}  // namespace rashomon
