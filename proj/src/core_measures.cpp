#include "rashomon/core_measures.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "rashomon/parallel.hpp"

namespace rashomon {

namespace {

double clamp_probability(double p) { return std::clamp(p, 0.0, 1.0); }

void require_finite_nonnegative(double loss) {
  if (!std::isfinite(loss) || loss < 0.0) throw Error("invalid loss");
}

}  // namespace

int worker_count() { return omp_get_max_threads(); }

void set_worker_count(int workers) {
  if (workers < 1) throw Error("worker count must be at least 1");
  omp_set_num_threads(workers);
}

const char* to_string(LossKind kind) {
  switch (kind) {
    case LossKind::true_reducible: return "true_reducible";
    case LossKind::true_anchored: return "true_anchored";
    case LossKind::empirical_anchored: return "empirical_anchored";
  }
  return "unknown";
}

const char* to_string(Guarantee kind) {
  switch (kind) {
    case Guarantee::hoeffding_true: return "hoeffding_true";
    case Guarantee::hoeffding_anchored: return "hoeffding_anchored";
    case Guarantee::split_statement: return "split_statement";
    case Guarantee::split_proof: return "split_proof";
  }
  return "unknown";
}

RatioEstimate estimate_ratio_mc(std::span<const LossSample> losses, double gamma, std::uint64_t seed) {
  if (losses.empty()) throw Error("no samples");
  if (!(gamma > 0.0)) throw Error("gamma must be positive");
  const LossKind kind = losses.front().kind;
  std::size_t inside = 0;
  for (const auto& sample : losses) {
    require_finite_nonnegative(sample.loss);
    if (sample.kind != kind) throw Error("mixed loss kinds in one estimate");
    if (sample.loss <= gamma) ++inside;
  }
  RatioEstimate est;
  est.n_samples = losses.size();
  est.n_inside = inside;
  est.value = static_cast<double>(inside) / static_cast<double>(losses.size());
  est.gamma = gamma;
  est.seed = seed;
  est.kind = kind;
  return est;
}

RatioEstimate estimate_ratio_mc(std::span<const double> losses, double gamma, LossKind kind, std::uint64_t seed) {
  std::vector<LossSample> samples;
  samples.reserve(losses.size());
  for (double loss : losses) samples.push_back({loss, kind});
  return estimate_ratio_mc(std::span<const LossSample>(samples), gamma, seed);
}

double hoeffding_ratio_bound(std::size_t n_samples, double epsilon) {
  if (!(epsilon > 0.0)) throw Error("epsilon must be positive");
  const auto n = static_cast<double>(n_samples);
  return clamp_probability(2.0 * std::exp(-2.0 * n * epsilon * epsilon));
}

ConfidenceReport hoeffding_report(std::size_t n_samples, double epsilon, Guarantee kind) {
  if (kind != Guarantee::hoeffding_true && kind != Guarantee::hoeffding_anchored)
    throw Error("hoeffding_report covers true and anchored ratio estimates only");
  ConfidenceReport report;
  report.epsilon = epsilon;
  report.delta = hoeffding_ratio_bound(n_samples, epsilon);
  report.loss_bound_b = 1.0;
  report.guarantee_kind = kind;
  return report;
}

double hoeffding_epsilon(std::size_t n_samples, double delta) {
  if (n_samples == 0) throw Error("n_samples must be positive");
  if (!(delta > 0.0 && delta < 1.0)) throw Error("delta must lie in (0,1)");
  return std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(n_samples)));
}

std::size_t required_mc_samples(double epsilon, double delta) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw Error("epsilon must be positive");
  if (!(delta > 0.0 && delta < 1.0)) throw Error("delta must lie in (0,1)");
  const double raw = std::log(2.0 / delta) / (2.0 * epsilon * epsilon);
  auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(raw)));
  // ceil() of a rounded quotient can be off by one in either direction.
  while (n > 1 && hoeffding_ratio_bound(n - 1, epsilon) <= delta) --n;
  while (hoeffding_ratio_bound(n, epsilon) > delta) ++n;
  return n;
}

double theorem3_guarantee(std::size_t n, std::size_t n_classifiers, double epsilon, double eta, double b,
                          Theorem3Variant variant) {
  if (n == 0 || n_classifiers == 0) throw Error("n and N must be positive");
  if (epsilon < 0.0 || !(eta > 0.0) || !(b > 0.0)) throw Error("epsilon, eta and b must be positive");
  const double per_chunk = static_cast<double>(n) / static_cast<double>(n_classifiers);
  const double N = static_cast<double>(n_classifiers);
  const double ratio = epsilon / b;
  const double tail = std::exp(-2.0 * per_chunk * ratio * ratio);
  const double factor = variant == Theorem3Variant::proof ? 1.0 - 2.0 * tail : 1.0 - tail;
  if (factor <= 0.0) return 0.0;
  const double log_data = N * std::log(factor);
  const double log_draw = 2.0 * std::log1p(-std::exp(-N * eta * eta));
  return clamp_probability(std::exp(log_data + log_draw));
}

ConfidenceReport theorem3_report(std::size_t n, std::size_t n_classifiers, double epsilon, double eta, double b,
                                 Theorem3Variant variant) {
  ConfidenceReport report;
  report.epsilon = epsilon;
  report.delta = 1.0 - theorem3_guarantee(n, n_classifiers, epsilon, eta, b, variant);
  report.n_data = n;
  report.loss_bound_b = b;
  report.guarantee_kind =
      variant == Theorem3Variant::proof ? Guarantee::split_proof : Guarantee::split_statement;
  return report;
}

std::vector<std::vector<Eigen::Index>> split_rows(Eigen::Index n, std::size_t n_chunks, std::uint64_t seed) {
  if (n_chunks == 0) throw Error("no samples");
  if (n < static_cast<Eigen::Index>(n_chunks)) throw Error("insufficient data for splitting");
  std::vector<Eigen::Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), Eigen::Index{0});
  auto rng = substream(seed, Stream::dataset_shuffle, 0);
  for (std::size_t i = perm.size() - 1; i > 0; --i) {
    std::uniform_int_distribution<std::size_t> pick(0, i);
    std::swap(perm[i], perm[pick(rng)]);
  }
  const std::size_t chunk = perm.size() / n_chunks;
  std::vector<std::vector<Eigen::Index>> chunks(n_chunks);
  for (std::size_t c = 0; c < n_chunks; ++c)
    chunks[c].assign(perm.begin() + static_cast<std::ptrdiff_t>(c * chunk),
                     perm.begin() + static_cast<std::ptrdiff_t>((c + 1) * chunk));
  return chunks;
}

}  // namespace rashomon
