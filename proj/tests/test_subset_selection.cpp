#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "rashomon/gaussian_affine.hpp"
#include "rashomon/subset_selection.hpp"

using namespace rashomon;

TEST_CASE("min_ratio_for_subset") {
  CHECK(min_ratio_for_subset(1, 0.1) == doctest::Approx(0.9).epsilon(1e-15));
  CHECK(min_ratio_for_subset(1000000, 0.1) == doctest::Approx(2.302582442047025e-6).epsilon(1e-12));
  CHECK_THROWS(min_ratio_for_subset(0, 0.1));
  CHECK_THROWS(min_ratio_for_subset(3, 0.0));
  CHECK_THROWS(min_ratio_for_subset(3, 1.0));
}

TEST_CASE("required_subset_size") {
  CHECK(required_subset_size(0.53, 0.01) == 7);
  CHECK(plan_subset(0.53, 0.01).raw_size == doctest::Approx(6.099380709772601).epsilon(1e-12));
  CHECK(required_subset_size(0.5, 0.5) == 1);
  CHECK(required_subset_size(1.0, 0.1) == 1);
  const auto huge = plan_subset(0.5e-8, 0.1);
  CHECK(huge.raw_size == doctest::Approx(460517017.4475166).epsilon(1e-9));
  CHECK(std::abs(static_cast<double>(huge.n_subset) - 4.605e8) <= 0.005 * 4.605e8);
  CHECK_THROWS_WITH(required_subset_size(0.0, 0.1), "no finite subset suffices");
  CHECK_THROWS(required_subset_size(-0.1, 0.1));
  CHECK_THROWS(required_subset_size(0.5, 0.0));
}

TEST_CASE("required_subset_size is the smallest N with (1 - ratio)^N <= delta") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> r(1e-4, 0.999);
  std::uniform_real_distribution<double> d(1e-6, 0.999);
  for (int i = 0; i < 1000; ++i) {
    const double ratio = r(gen);
    const double delta = d(gen);
    const auto n = required_subset_size(ratio, delta);
    const long double miss = std::log1pl(-static_cast<long double>(ratio));
    CHECK(static_cast<long double>(n) * miss <= std::log(static_cast<long double>(delta)) + 1e-15L);
    if (n > 1) CHECK(static_cast<long double>(n - 1) * miss > std::log(static_cast<long double>(delta)) - 1e-15L);
  }
}

TEST_CASE("mutual inverse at the boundary") {
  int mismatches = 0;
  for (double delta : {0.5, 0.1, 0.01}) {
    for (std::size_t n = 1; n <= 1000000; n = n < 100 ? n + 1 : n * 3 / 2)
      if (required_subset_size(min_ratio_for_subset(n, delta), delta) != n) ++mismatches;
  }
  CHECK(mismatches == 0);

  // The minimal ratio for the required size never exceeds the input ratio.
  std::mt19937_64 gen(9);
  std::uniform_real_distribution<double> r(1e-3, 0.99);
  std::uniform_real_distribution<double> d(1e-3, 0.99);
  for (int i = 0; i < 100; ++i) {
    const double ratio = r(gen);
    const double delta = d(gen);
    CHECK(min_ratio_for_subset(required_subset_size(ratio, delta), delta) <= ratio * (1.0 + 1e-12));
  }
}

TEST_CASE("membership_transfer_bound") {
  CHECK(membership_transfer_bound(1, 1.0, 1.0) == doctest::Approx(0.8646647167633873).epsilon(1e-14));
  CHECK(membership_transfer_bound(1000000, 0.1, 1.0) == 1.0);
  CHECK(membership_transfer_bound(100, 0.0, 1.0) == 0.0);
  CHECK_THROWS(membership_transfer_bound(0, 0.1, 1.0));
}

TEST_CASE("vc_delta") {
  // Direct evaluation of sqrt((2 (ln 1e4 + 1) - ln 0.0125) / 1e4).
  CHECK(vc_delta(10000, 2.0, 1.0, 0.05).value == doctest::Approx(0.049802316591325596).epsilon(1e-13));
  double prev = INFINITY;
  for (std::size_t n = 10; n <= 10000000; n *= 2) {
    const double v = vc_delta(n, 3.0, 1.0, 0.1).value;
    CHECK(v < prev);
    prev = v;
  }
  const double near_one = vc_delta(1000, 2.0, 1.0, 1.0 - 1e-15).value;
  CHECK(near_one == doctest::Approx(std::sqrt((2.0 * (std::log(1000.0) + 1.0) + std::log(4.0)) / 1000.0)));
  CHECK(vc_delta(10000, 2.0, 3.0, 0.05).value == doctest::Approx(3.0 * 0.049802316591325596).epsilon(1e-13));
  CHECK_THROWS(vc_delta(2, 2.0, 1.0, 0.05));
  CHECK_THROWS(vc_delta(100, 0.5, 1.0, 0.05));
}

TEST_CASE("growth_delta") {
  CHECK(growth_delta(10000, 4e5, 0.05).value == doctest::Approx(0.11757974812275795).epsilon(1e-13));
  CHECK(growth_delta(100, 1.0, 4.0 - 1e-300).value == doctest::Approx(0.0));
  CHECK(tarp_growth(10000, 7) == 280000.0);
  const auto tarp = growth_delta(10000, tarp_growth(10000, 7), 0.01);
  CHECK(tarp.value == doctest::Approx(std::sqrt(8.0 / 10000.0 * std::log(16.0 * 10000 * 7 / 0.01))).epsilon(1e-14));
  CHECK(tarp.kind == DeltaKind::growth);
  CHECK_THROWS(growth_delta(0, 10.0, 0.1));
  CHECK_THROWS(growth_delta(10, 0.5, 0.1));
}

TEST_CASE("theorem5_sandwich") {
  GeneralizationDelta none;
  none.value = 0.0;
  const auto point = theorem5_sandwich(0.2, 0.0, 0.1, 1u << 30, 1.0, none);
  CHECK(point.lower == 0.2);
  CHECK(point.upper == doctest::Approx(0.2).epsilon(1e-4));
  CHECK_FALSE(point.caveat.empty());

  std::mt19937_64 gen(12);
  std::uniform_real_distribution<double> u(0.0, 0.5);
  for (int i = 0; i < 200; ++i) {
    const double inf = u(gen), gamma = u(gen), delta = 0.01 + u(gen), b = 0.5 + u(gen);
    const std::size_t n = 10 + static_cast<std::size_t>(1000 * u(gen));
    const auto dv = vc_delta(n, 2.0, b, delta);
    const auto iv = theorem5_sandwich(inf, gamma, delta, n, b, dv);
    CHECK(iv.width() == doctest::Approx(dv.value + gamma + b * std::sqrt(std::log(1.0 / delta) / (2.0 * n))));
  }
}

TEST_CASE("tarp_bound") {
  const double inf = bayes_error(GaussianMixture::antipodal_along_axis(1, 5.0, 1.0));
  const auto iv = tarp_bound(10000, 7, 0.01, inf, 0.05);
  CHECK(iv.lower == doctest::Approx(-0.11555735624988488).epsilon(1e-12));
  CHECK(iv.upper == doctest::Approx(0.0713839366196276).epsilon(1e-12));
  const auto composed = theorem5_sandwich(inf, 0.05, 0.01, 10000, 1.0, growth_delta(10000, 4.0 * 10000 * 7, 0.01));
  CHECK(iv.lower == composed.lower);
  CHECK(iv.upper == composed.upper);
  double prev = INFINITY;
  for (std::size_t n = 100; n <= 10000000; n *= 10) {
    const double w = tarp_bound(n, 7, 0.01, inf, 0.05).width();
    CHECK(w < prev);
    prev = w;
  }
}

namespace {

LabeledDataset make(const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
  LabeledDataset ds;
  ds.features = x;
  ds.labels = y;
  return ds;
}

// Exhaustive 0-1 error over every split of a sorted 1-d sample, both orientations.
double brute_force_best(const Eigen::VectorXd& z, const Eigen::VectorXd& y) {
  double best = 1.0;
  std::vector<double> cuts{-INFINITY, INFINITY};
  for (Eigen::Index i = 0; i < z.size(); ++i) cuts.push_back(z(i));
  for (double c : cuts) {
    for (int o : {1, -1}) {
      int wrong = 0;
      for (Eigen::Index i = 0; i < z.size(); ++i) {
        const double pred = ((z(i) > c) == (o > 0)) ? 1.0 : -1.0;
        if (pred != y(i)) ++wrong;
      }
      best = std::min(best, wrong / static_cast<double>(z.size()));
    }
  }
  return best;
}

}  // namespace

TEST_CASE("tarp_train small cases") {
  const auto one = tarp_train(make(Eigen::MatrixXd::Constant(1, 2, 0.3), Eigen::VectorXd::Constant(1, -1.0)), 3, 1);
  CHECK(one.train_error == 0.0);

  Eigen::MatrixXd x(6, 1);
  x << -3, -2, -1, 1, 2, 3;
  Eigen::VectorXd y(6);
  y << -1, -1, -1, 1, 1, 1;
  const auto sep = tarp_train(make(x, y), 1, 5);
  CHECK(sep.train_error == 0.0);
  const double t = sep.best_threshold * (sep.directions(0, 0) > 0 ? 1.0 : -1.0);
  CHECK(std::abs(t) < 1.0);
  CHECK(tarp_error(sep, make(x, y)) == 0.0);

  Eigen::VectorXd bad = y;
  bad(0) = 0.5;
  CHECK_THROWS(tarp_train(make(x, bad), 1, 1));
  CHECK_THROWS(tarp_train(make(x, y), 0, 1));
}

TEST_CASE("tarp_train agrees with exhaustive search and its invariants") {
  std::mt19937_64 gen(21);
  std::normal_distribution<double> n;
  for (int trial = 0; trial < 50; ++trial) {
    const int rows = 5 + trial;
    Eigen::MatrixXd x(rows, 3);
    Eigen::VectorXd y(rows);
    int positives = 0;
    for (int i = 0; i < rows; ++i) {
      y(i) = n(gen) > 0.3 ? 1.0 : -1.0;
      positives += y(i) > 0;
      for (int k = 0; k < 3; ++k) x(i, k) = std::round(4.0 * n(gen)) / 2.0 + y(i) * 0.5;
    }
    const auto ds = make(x, y);
    const auto model = tarp_train(ds, 4, 100 + trial);
    double best = 1.0;
    for (Eigen::Index k = 0; k < 4; ++k)
      best = std::min(best, brute_force_best(x * model.directions.row(k).transpose(), y));
    CHECK(model.train_error == doctest::Approx(best).epsilon(1e-15));
    CHECK(tarp_error(model, ds) == model.train_error);
    const double minority = std::min(positives, rows - positives) / static_cast<double>(rows);
    CHECK(model.train_error <= minority);
    CHECK((model.directions.rowwise().norm().array() - 1.0).abs().maxCoeff() <= 1e-12);

    const auto scaled = tarp_train(make(7.5 * x, y), 4, 100 + trial);
    CHECK(scaled.train_error == model.train_error);
    CHECK(scaled.best_index == model.best_index);
  }
}

TEST_CASE("tarp on the separated Gaussian mixture") {
  const auto gm = GaussianMixture::antipodal_along_axis(5, 5.0, 1.0);
  const auto inf = bayes_error(gm);
  int within = 0;
  int hit_trials = 0;
  int hit_and_contained = 0;
  for (std::uint64_t trial = 0; trial < 100; ++trial) {
    const auto data = sample_mixture(gm, 2000, 500 + trial);
    const auto model = tarp_train(data, 7, 900 + trial);
    if (model.train_error <= inf + 0.05 + 0.03) ++within;

    // The sandwich only applies when some projection falls in the Rashomon set.
    bool hit = false;
    for (Eigen::Index k = 0; k < 7; ++k) {
      const Eigen::VectorXd a = model.directions.row(k).transpose();
      if (projected_error(gm, a) - inf <= 0.05) hit = true;
    }
    if (hit) {
      ++hit_trials;
      if (tarp_bound(2000, 7, 0.01, inf, 0.05).contains(model.train_error)) ++hit_and_contained;
    }
  }
  CHECK(within >= 95);
  REQUIRE(hit_trials > 0);
  CHECK(hit_and_contained >= static_cast<int>(0.97 * hit_trials));
}
