#include "doctest.h"

#include <set>

#include "oracles.hpp"
#include "tcboost/rng.hpp"
#include "tcboost/stump.hpp"

using namespace tcboost;

namespace {

Dataset random_dataset(Index m, Index dims, Rng& rng) {
  MatrixXd x(m, dims);
  VectorXi y(m);
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < dims; ++j) x(i, j) = rng.uniform(-2, 2);
    y[i] = rng.bernoulli(0.5) ? 1 : -1;
  }
  // Ensure both classes appear.
  y[0] = 1;
  y[m - 1] = -1;
  return Dataset(std::move(x), std::move(y));
}

std::vector<int> all_features(const Dataset& data) {
  std::vector<int> out;
  for (Index j = 0; j < data.feature_count(); ++j) out.push_back(static_cast<int>(j));
  return out;
}

}  // namespace

TEST_SUITE("stump") {
  TEST_CASE("perfectly separable pair: threshold at the midpoint, edge 1") {
    MatrixXd x(2, 1);
    x << -1.0, 1.0;
    VectorXi y(2);
    y << -1, 1;
    const Dataset data(x, y);
    const VectorXd u = VectorXd::Constant(2, 0.5);
    const StumpSearchResult found = best_stump(data, u, {0});
    CHECK(found.stump.threshold == 0.0);
    CHECK(found.stump.polarity == +1);
    CHECK(found.edge == doctest::Approx(1.0));
  }

  TEST_CASE("flipped labels give the same threshold with polarity -1") {
    MatrixXd x(2, 1);
    x << -1.0, 1.0;
    VectorXi y(2);
    y << 1, -1;
    const Dataset data(x, y);
    const StumpSearchResult found = best_stump(data, VectorXd::Constant(2, 0.5), {0});
    CHECK(found.stump.threshold == 0.0);
    CHECK(found.stump.polarity == -1);
    CHECK(found.edge == doctest::Approx(1.0));
  }

  TEST_CASE("all-equal features fall back to the constant stump below the minimum") {
    MatrixXd x(4, 1);
    x << 2.0, 2.0, 2.0, 2.0;
    VectorXi y(4);
    y << 1, 1, 1, -1;
    const Dataset data(x, y);
    const VectorXd u = VectorXd::Constant(4, 0.25);
    const StumpSearchResult found = best_stump(data, u, {0});
    CHECK(found.stump.threshold < 2.0);
    CHECK(found.stump.polarity == +1);  // majority positive: predict +1 everywhere
    CHECK(found.edge == doctest::Approx(0.5));
  }

  TEST_CASE("matches the brute-force oracle on random data, ties included") {
    Rng rng(53, "test-stump-oracle");
    for (int trial = 0; trial < 40; ++trial) {
      const Index m = 5 + static_cast<Index>(rng.uniform_int(46));
      const Dataset data = random_dataset(m, 5, rng);
      VectorXd u(m);
      for (Index i = 0; i < m; ++i) u[i] = rng.uniform();
      const auto features = all_features(data);
      const StumpSearchResult fast = best_stump(data, u, features);
      const StumpSearchResult slow = oracles::brute_force_best_stump(data, u, features);
      CHECK(fast.stump.feature == slow.stump.feature);
      CHECK(fast.stump.threshold == doctest::Approx(slow.stump.threshold).epsilon(1e-12));
      CHECK(fast.stump.polarity == slow.stump.polarity);
      CHECK(fast.edge == doctest::Approx(slow.edge).epsilon(1e-10));
      CHECK(fast.edge >= 0.0);  // both polarities searched
    }
  }

  TEST_CASE("duplicated feature columns break ties toward the lower index") {
    Rng rng(59, "test-stump-ties");
    MatrixXd x(10, 3);
    VectorXi y(10);
    for (Index i = 0; i < 10; ++i) {
      x(i, 1) = rng.uniform(-1, 1);
      x(i, 0) = 7.0;  // useless constant feature; never optimal
      x(i, 2) = x(i, 1);
      y[i] = rng.bernoulli(0.5) ? 1 : -1;
    }
    y[0] = 1;
    y[9] = -1;
    const Dataset data(x, y);
    const VectorXd u = VectorXd::Constant(10, 0.1);
    const StumpSearchResult found = best_stump(data, u, {0, 1, 2});
    CHECK(found.stump.feature == 1);  // same edge as feature 2, lower index wins
    const StumpSearchResult oracle = oracles::brute_force_best_stump(data, u, {0, 1, 2});
    CHECK(found.stump.feature == oracle.stump.feature);
    CHECK(found.stump.threshold == oracle.stump.threshold);
    CHECK(found.stump.polarity == oracle.stump.polarity);
  }

  TEST_CASE("scaling the weights scales the edge and keeps the choice") {
    Rng rng(61, "test-stump-scale");
    const Dataset data = random_dataset(30, 4, rng);
    VectorXd u(30);
    for (Index i = 0; i < 30; ++i) u[i] = rng.uniform();
    const auto features = all_features(data);
    const StumpSearchResult base = best_stump(data, u, features);
    const StumpSearchResult scaled = best_stump(data, (3.5 * u).eval(), features);
    CHECK(scaled.stump.feature == base.stump.feature);
    CHECK(scaled.stump.threshold == base.stump.threshold);
    CHECK(scaled.stump.polarity == base.stump.polarity);
    CHECK(scaled.edge == doctest::Approx(3.5 * base.edge).epsilon(1e-12));
  }

  TEST_CASE("results are independent of the worker count") {
    Rng rng(67, "test-stump-threads");
    const Dataset data = random_dataset(64, 16, rng);
    VectorXd u(64);
    for (Index i = 0; i < 64; ++i) u[i] = rng.uniform();
    const auto features = all_features(data);
    const StumpSearchResult one = best_stump(data, u, features, 1);
    for (const int threads : {2, 3, 8}) {
      const StumpSearchResult multi = best_stump(data, u, features, threads);
      CHECK(multi.stump.feature == one.stump.feature);
      CHECK(multi.stump.threshold == one.stump.threshold);
      CHECK(multi.stump.polarity == one.stump.polarity);
      CHECK(multi.edge == one.edge);
    }
  }

  TEST_CASE("signed weights are honored (column generation passes raw duals)") {
    Rng rng(71, "test-neg");
    const Dataset data = random_dataset(12, 3, rng);
    VectorXd u(12);
    for (Index i = 0; i < 12; ++i) u[i] = rng.uniform(-0.5, 1.0);
    const StumpSearchResult fast = best_stump(data, u, {0, 1, 2});
    const StumpSearchResult slow = oracles::brute_force_best_stump(data, u, {0, 1, 2});
    CHECK(fast.stump.feature == slow.stump.feature);
    CHECK(fast.stump.threshold == slow.stump.threshold);
    CHECK(fast.stump.polarity == slow.stump.polarity);
    CHECK(fast.edge >= 0.0);
  }

  TEST_CASE("sample_features: full fraction returns every index") {
    const std::vector<int> all = sample_features(10, 1.0, 5);
    CHECK(all.size() == 10);
    for (int j = 0; j < 10; ++j) CHECK(all[static_cast<std::size_t>(j)] == j);
  }

  TEST_CASE("sample_features: ceiling arithmetic at the paper's scale") {
    const std::vector<int> sampled = sample_features(162336, 0.1, 9);
    CHECK(sampled.size() == 16234);
    const std::set<int> unique(sampled.begin(), sampled.end());
    CHECK(unique.size() == sampled.size());
    CHECK(*unique.begin() >= 0);
    CHECK(*unique.rbegin() < 162336);
  }

  TEST_CASE("sample_features is deterministic per seed") {
    CHECK(sample_features(1000, 0.25, 42) == sample_features(1000, 0.25, 42));
    CHECK(sample_features(1000, 0.25, 42) != sample_features(1000, 0.25, 43));
    CHECK_THROWS_AS(sample_features(10, 0.0, 1), std::invalid_argument);
  }
}
