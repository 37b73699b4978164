#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "tcboost/booster.hpp"
#include "tcboost/datasets.hpp"
#include "tcboost/rng.hpp"

using namespace tcboost;

namespace {

MatrixXd random_pm1(Index rows, Index cols, Rng& rng) {
  MatrixXd a(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) a(i, j) = rng.bernoulli(0.5) ? 1.0 : -1.0;
  }
  return a;
}

VectorXi half_labels(Index m1, Index m2) {
  VectorXi labels(m1 + m2);
  labels.head(m1).setConstant(1);
  labels.tail(m2).setConstant(-1);
  return labels;
}

Dataset xorish_dataset() {
  // Two interleaved diagonal clusters; not separable by a single stump.
  MatrixXd x(20, 2);
  VectorXi y(20);
  Rng rng(77, "xorish");
  for (Index i = 0; i < 20; ++i) {
    const bool flip = i % 2 == 0;
    const double cx = flip ? 1.0 : -1.0;
    const double cy = (i % 4 < 2) ? cx : -cx;
    x(i, 0) = cx + 0.4 * rng.normal();
    x(i, 1) = cy + 0.4 * rng.normal();
    y[i] = (cx * cy > 0) ? 1 : -1;
  }
  return Dataset(std::move(x), std::move(y));
}

}  // namespace

TEST_SUITE("booster") {
  TEST_CASE("assemble_qp: single column dimensions and zero theta") {
    Rng rng(5, "test-assemble");
    const VectorXi labels = half_labels(4, 6);
    const ClassVector cv = make_class_vector(labels);
    const QMatrix q = build_q(BoostMode::fisher, 4, 6, true);
    const MatrixXd a = random_pm1(10, 1, rng);
    const SimplexQp qp = assemble_qp(a, q, cv.e, 0.5);
    CHECK(qp.P.rows() == 1);
    CHECK(qp.P(0, 0) == doctest::Approx(a.col(0).dot(q.apply(a.col(0)))));
    CHECK(qp.c[0] == doctest::Approx(0.5 * cv.e.dot(a.col(0))));
    const SimplexQp qp0 = assemble_qp(a, q, cv.e, 0.0);
    CHECK(qp0.c.lpNorm<Eigen::Infinity>() == 0.0);
  }

  TEST_CASE("assemble_qp: w'Pw equals rho'Q rho for random simplex points") {
    Rng rng(7, "test-assemble-quad");
    const VectorXi labels = half_labels(5, 5);
    const ClassVector cv = make_class_vector(labels);
    for (const BoostMode mode : {BoostMode::fisher, BoostMode::lac}) {
      const QMatrix q = build_q(mode, 5, 5, true);
      const MatrixXd a = random_pm1(10, 4, rng);
      const SimplexQp qp = assemble_qp(a, q, cv.e, 0.1);
      CHECK((qp.P - qp.P.transpose()).lpNorm<Eigen::Infinity>() <= 1e-10);
      for (int trial = 0; trial < 100; ++trial) {
        VectorXd v(4);
        for (Index j = 0; j < 4; ++j) v[j] = rng.uniform(-1, 2);
        const VectorXd w = project_to_simplex(v);
        const VectorXd rho = a * w;
        CHECK(0.5 * w.dot(qp.P * w) == doctest::Approx(0.5 * q.quad(rho)).epsilon(1e-10));
      }
    }
  }

  TEST_CASE("recover_dual substitution identities") {
    Rng rng(9, "test-dual");
    const VectorXi labels = half_labels(3, 5);
    const ClassVector cv = make_class_vector(labels);
    const QMatrix q = build_q(BoostMode::fisher, 3, 5, true);
    const MatrixXd a = random_pm1(8, 3, rng);

    // rho = 0: u = theta e, r = theta max_j (e'A)_j.
    const double theta = 0.25;
    const DualCertificate at_zero = recover_dual(VectorXd::Zero(8), q, cv.e, theta, a);
    CHECK((at_zero.u - theta * cv.e).lpNorm<Eigen::Infinity>() == 0.0);
    CHECK(at_zero.r == doctest::Approx(theta * (cv.e.transpose() * a).maxCoeff()).epsilon(1e-12));

    // theta = 0 with the diagonal approximation: u = -rho / m.
    const QMatrix q_diag = build_q(BoostMode::fisher, 3, 5, false);
    VectorXd rho(8);
    for (Index i = 0; i < 8; ++i) rho[i] = rng.normal();
    const DualCertificate cert = recover_dual(rho, q_diag, cv.e, 0.0, a);
    CHECK((cert.u + rho / 8.0).lpNorm<Eigen::Infinity>() <= 1e-15);
  }

  TEST_CASE("dual certificate is feasible and the duality gap closes at the exact-Q optimum") {
    Rng rng(13, "test-gap");
    const Index m1 = 20, m2 = 30, n = 6;
    const VectorXi labels = half_labels(m1, m2);
    const ClassVector cv = make_class_vector(labels);
    const double theta = 0.1;
    for (const BoostMode mode : {BoostMode::fisher, BoostMode::lac}) {
      const QMatrix q = build_q(mode, m1, m2, true, 1e-6);
      const MatrixXd a = random_pm1(m1 + m2, n, rng);
      const SimplexQp qp = assemble_qp(a, q, cv.e, theta);
      const ReferenceResult ref = reference_solve(qp);
      REQUIRE(ref.converged);
      const VectorXd rho = a * ref.w;
      const DualCertificate cert = recover_dual(rho, q, cv.e, theta, a);
      const VectorXd edges = a.transpose() * cert.u;
      for (Index j = 0; j < n; ++j) CHECK(edges[j] <= cert.r + 1e-6);
      const double primal = qp.value(ref.w);
      const double dual = dual_objective(cert, q, cv.e, theta);
      // The dual can sit a hair above the primal: u comes from the plain Q
      // (the KKT identity) while the dual objective inverts Q + delta I.
      CHECK(std::abs(primal - dual) <= 1e-4);
    }
  }

  TEST_CASE("separable two-point dataset: one stump, w = [1], zero training error") {
    MatrixXd x(2, 1);
    x << -1.0, 1.0;
    VectorXi y(2);
    y << -1, 1;
    const Dataset data(x, y);
    BoostConfig config;
    config.n_max = 1;
    const TrainResult result = train_totally_corrective(data, config, BoostMode::fisher);
    REQUIRE(result.classifier.stumps.size() == 1);
    CHECK(result.classifier.weights[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(result.classifier.offset == 0.0);
    const VectorXi pred = predict(result.classifier, data);
    CHECK(pred == y);
  }

  TEST_CASE("column generation: monotone primal, feasible duals, simplex weights, clean termination") {
    const Dataset data = gen_toy_2d(30, 90, 101);
    BoostConfig config;
    config.theta = 0.1;
    config.epsilon = 1e-5;
    config.n_max = 60;
    config.q_exact = true;
    for (const BoostMode mode : {BoostMode::fisher, BoostMode::lac}) {
      const TrainResult result = train_totally_corrective(data, config, mode);
      REQUIRE(!result.trace.empty());
      for (std::size_t t = 1; t < result.trace.size(); ++t) {
        CHECK(result.trace[t].primal_obj <= result.trace[t - 1].primal_obj + 1e-12);
      }
      CHECK((result.classifier.weights.array() >= 0.0).all());
      CHECK(result.classifier.weights.sum() == doctest::Approx(1.0).epsilon(1e-10));

      // After the epsilon stop, no stump in the sampled pool beats r + eps.
      if (result.terminated_early) {
        const OrderedDataset ordered = order_by_label(data);
        const StumpSearchResult best =
            best_stump(ordered.data, result.final_certificate.u, result.feature_subset);
        CHECK(best.edge < result.final_certificate.r + config.epsilon);
      }
    }
  }

  TEST_CASE("final primal objective matches a from-scratch exact-Q reference solve on the same columns") {
    const Dataset data = gen_toy_2d(20, 20, 55);  // m = 40
    BoostConfig config;
    config.theta = 0.1;
    config.n_max = 25;
    config.q_exact = true;
    config.eg.step_multiplier = 16.0;
    config.eg.tolerance = 1e-10;
    config.eg.max_iters = 100000;
    const TrainResult result = train_totally_corrective(data, config, BoostMode::fisher);
    REQUIRE(!result.trace.empty());

    const OrderedDataset ordered = order_by_label(data);
    const ClassVector cv = make_class_vector(ordered.data.labels());
    const QMatrix q = build_q(BoostMode::fisher, ordered.data.positives(), ordered.data.negatives(), true);
    const Index n = static_cast<Index>(result.classifier.stumps.size());
    MatrixXd a(ordered.data.size(), n);
    for (Index j = 0; j < n; ++j) {
      a.col(j) = stump_responses(result.classifier.stumps[static_cast<std::size_t>(j)], ordered.data)
                     .cwiseProduct(ordered.data.labels().cast<double>());
    }
    const SimplexQp qp = assemble_qp(a, q, cv.e, config.theta);
    const ReferenceResult ref = reference_solve(qp);
    REQUIRE(ref.converged);
    CHECK(std::abs(result.trace.back().primal_obj - ref.f) <= 1e-5 * (1.0 + std::abs(ref.f)));
  }

  TEST_CASE("warm stumps are re-optimized, not frozen") {
    const Dataset data = gen_toy_2d(40, 80, 202);
    BoostConfig config;
    config.n_max = 10;
    const TrainResult first = train_totally_corrective(data, config, BoostMode::fisher);
    BoostConfig larger = config;
    larger.n_max = 16;
    const TrainResult continued =
        train_totally_corrective(data, larger, BoostMode::fisher, &first.classifier.stumps);
    CHECK(continued.classifier.stumps.size() >= first.classifier.stumps.size());
    for (std::size_t j = 0; j < first.classifier.stumps.size(); ++j) {
      CHECK(continued.classifier.stumps[j].feature == first.classifier.stumps[j].feature);
      CHECK(continued.classifier.stumps[j].threshold == first.classifier.stumps[j].threshold);
    }
    CHECK(continued.classifier.weights.sum() == doctest::Approx(1.0).epsilon(1e-10));
  }

  TEST_CASE("adaboost: separable data reaches zero training error in one round") {
    MatrixXd x(4, 1);
    x << -2.0, -1.0, 1.0, 2.0;
    VectorXi y(4);
    y << -1, -1, 1, 1;
    const Dataset data(x, y);
    BoostConfig config;
    config.n_max = 5;
    const TrainResult result = train_adaboost(data, config);
    REQUIRE(result.classifier.stumps.size() == 1);  // capped coefficient, then stop
    CHECK(oracles::training_error(result.classifier.stumps, {1.0}, data) == 0.0);
  }

  TEST_CASE("adaboost: a zero-edge round terminates the loop") {
    // Constant feature with balanced labels: every stump has edge 0.
    MatrixXd x(4, 1);
    x.setConstant(3.0);
    VectorXi y(4);
    y << 1, 1, -1, -1;
    const Dataset data(x, y);
    BoostConfig config;
    config.n_max = 5;
    const TrainResult result = train_adaboost(data, config);
    CHECK(result.classifier.stumps.empty());
  }

  TEST_CASE("adaboost matches a textbook reimplementation on xor-ish data") {
    const Dataset data = xorish_dataset();
    BoostConfig config;
    config.n_max = 10;
    const TrainResult result = train_adaboost(data, config);
    const oracles::TextbookAdaBoost oracle = oracles::textbook_adaboost(data, 10, {0, 1});
    REQUIRE(result.classifier.stumps.size() == oracle.stumps.size());
    for (std::size_t j = 0; j < oracle.stumps.size(); ++j) {
      CHECK(result.classifier.stumps[j].feature == oracle.stumps[j].feature);
      CHECK(result.classifier.stumps[j].threshold == doctest::Approx(oracle.stumps[j].threshold).epsilon(1e-12));
    }
    std::vector<double> lib_alphas(result.classifier.weights.data(),
                                   result.classifier.weights.data() + result.classifier.weights.size());
    const double lib_error = oracles::training_error(result.classifier.stumps, lib_alphas, data);
    const double oracle_error = oracles::training_error(oracle.stumps, oracle.alphas, data);
    CHECK(lib_error == doctest::Approx(oracle_error));
  }

  TEST_CASE("asym_tilt shifts mass toward positives exactly when k > 1") {
    const VectorXi labels = half_labels(3, 5);
    const VectorXd u = VectorXd::Constant(8, 1.0 / 8);
    const VectorXd same = asym_tilt(u, labels, 1.0, 10);
    CHECK((same - u).lpNorm<Eigen::Infinity>() <= 1e-15);
    const VectorXd tilted = asym_tilt(u, labels, 4.0, 10);
    CHECK(tilted.head(3).sum() > u.head(3).sum());
    CHECK(tilted.sum() == doctest::Approx(1.0).epsilon(1e-12));
    // One round of the documented multiplier, normalized.
    const double step = std::log(std::sqrt(4.0)) / 10;
    VectorXd expected = u;
    for (Index i = 0; i < 8; ++i) expected[i] *= std::exp(step * labels[i]);
    expected /= expected.sum();
    CHECK((tilted - expected).lpNorm<Eigen::Infinity>() <= 1e-15);
  }

  TEST_CASE("asymboost with k = 1 reproduces adaboost exactly") {
    const Dataset data = gen_toy_2d(25, 75, 404);
    BoostConfig config;
    config.n_max = 8;
    const TrainResult ada = train_adaboost(data, config);
    const TrainResult asym = train_asymboost(data, config, 1.0);
    REQUIRE(ada.classifier.stumps.size() == asym.classifier.stumps.size());
    for (std::size_t j = 0; j < ada.classifier.stumps.size(); ++j) {
      CHECK(ada.classifier.stumps[j].feature == asym.classifier.stumps[j].feature);
      CHECK(ada.classifier.stumps[j].threshold == asym.classifier.stumps[j].threshold);
      CHECK(ada.classifier.stumps[j].polarity == asym.classifier.stumps[j].polarity);
    }
    CHECK((ada.classifier.weights - asym.classifier.weights).lpNorm<Eigen::Infinity>() == 0.0);
  }

  TEST_CASE("asymboost k = 4 misses fewer positives than adaboost on most asymmetric seeds") {
    int asym_wins_or_ties = 0;
    const int seeds = 20;
    for (int seed = 0; seed < seeds; ++seed) {
      const Dataset data = gen_toy_2d(30, 300, 1000 + static_cast<std::uint64_t>(seed));
      BoostConfig config;
      config.n_max = 10;
      const TrainResult ada = train_adaboost(data, config);
      const TrainResult asym = train_asymboost(data, config, 4.0);
      auto false_negatives = [&](const StrongClassifier& clf) {
        const VectorXi pred = predict(clf, data);
        int fn = 0;
        for (Index i = 0; i < data.size(); ++i) {
          if (data.labels()[i] == 1 && pred[i] == -1) ++fn;
        }
        return fn;
      };
      if (false_negatives(asym.classifier) <= false_negatives(ada.classifier)) ++asym_wins_or_ties;
    }
    CHECK(asym_wins_or_ties > seeds / 2);
  }

  TEST_CASE("config validation rejects out-of-range parameters") {
    const Dataset data = gen_toy_2d(5, 5, 1);
    BoostConfig config;
    config.theta = 0.0;
    CHECK_THROWS_AS(train_totally_corrective(data, config, BoostMode::fisher), std::invalid_argument);
    config.theta = 1.5;
    CHECK_THROWS_AS(train_totally_corrective(data, config, BoostMode::fisher), std::invalid_argument);
    config = BoostConfig{};
    config.n_max = 0;
    CHECK_THROWS_AS(train_adaboost(data, config), std::invalid_argument);
    config = BoostConfig{};
    config.epsilon = 0.0;
    CHECK_THROWS_AS(train_totally_corrective(data, config, BoostMode::lac), std::invalid_argument);
  }
}
