#include "tcboost/booster.hpp"

#include <cmath>
#include <iostream>
#include <limits>
#include <optional>
#include <stdexcept>

namespace tcboost {

void BoostConfig::validate() const {
  if (!(theta > 0.0 && theta <= 1.0)) throw std::invalid_argument("BoostConfig: theta must be in (0, 1]");
  if (!(epsilon > 0.0)) throw std::invalid_argument("BoostConfig: epsilon must be positive");
  if (n_max < 1) throw std::invalid_argument("BoostConfig: n_max must be >= 1");
  if (!(delta > 0.0)) throw std::invalid_argument("BoostConfig: delta must be positive");
  if (!(feature_fraction > 0.0 && feature_fraction <= 1.0)) {
    throw std::invalid_argument("BoostConfig: feature_fraction must be in (0, 1]");
  }
  if (!(k_asym > 0.0)) throw std::invalid_argument("BoostConfig: k_asym must be positive");
}

VectorXd decision_scores(const StrongClassifier& classifier, const Dataset& data) {
  VectorXd scores = VectorXd::Constant(data.size(), -classifier.offset);
  for (std::size_t j = 0; j < classifier.stumps.size(); ++j) {
    scores += classifier.weights[static_cast<Index>(j)] * stump_responses(classifier.stumps[j], data);
  }
  return scores;
}

VectorXi predict(const StrongClassifier& classifier, const Dataset& data) {
  const VectorXd scores = decision_scores(classifier, data);
  VectorXi out(scores.size());
  for (Index i = 0; i < scores.size(); ++i) out[i] = sign_pm1(scores[i]);
  return out;
}

SimplexQp assemble_qp(const Eigen::Ref<const MatrixXd>& a_matrix, const QMatrix& q, const VectorXd& e, double theta) {
  const Index n = a_matrix.cols();
  MatrixXd qa(a_matrix.rows(), n);
  for (Index j = 0; j < n; ++j) qa.col(j) = q.apply(a_matrix.col(j));
  MatrixXd p = a_matrix.transpose() * qa;
  p = 0.5 * (p + p.transpose()).eval();
  VectorXd c = theta * (e.transpose() * a_matrix).transpose();
  return SimplexQp{std::move(p), std::move(c)};
}

DualCertificate recover_dual(const VectorXd& rho, const QMatrix& q, const VectorXd& e, double theta,
                             const Eigen::Ref<const MatrixXd>& a_matrix) {
  DualCertificate cert;
  cert.u = -q.apply(rho) + theta * e;
  cert.r = (a_matrix.transpose() * cert.u).maxCoeff();
  return cert;
}

double dual_objective(const DualCertificate& cert, const QMatrix& q, const VectorXd& e, double theta) {
  const VectorXd v = cert.u - theta * e;
  return -cert.r - 0.5 * v.dot(q.solve_regularized(v));
}

namespace {

// Restricted master problem grown one response column at a time. P and c
// live in preallocated storage so appends are O(mn).
class MasterProblem {
 public:
  MasterProblem(const QMatrix& q, VectorXd e, double theta, Index m, Index capacity)
      : q_(q), e_(std::move(e)), theta_(theta) {
    a_.resize(m, capacity);
    p_.setZero(capacity, capacity);
    c_.resize(capacity);
  }

  Index cols() const { return n_; }
  auto a() const { return a_.leftCols(n_); }

  void append_column(const VectorXd& a_col) {
    if (n_ == a_.cols()) {
      const Index grown = 2 * a_.cols();
      a_.conservativeResize(Eigen::NoChange, grown);
      p_.conservativeResize(grown, grown);
      c_.conservativeResize(grown);
    }
    a_.col(n_) = a_col;
    const VectorXd qa = q_.apply(a_col);
    for (Index j = 0; j <= n_; ++j) {
      const double value = a_.col(j).dot(qa);
      p_(j, n_) = value;
      p_(n_, j) = value;
    }
    c_[n_] = theta_ * e_.dot(a_col);
    ++n_;
  }

  SimplexQp qp() const { return SimplexQp{p_.topLeftCorner(n_, n_), c_.head(n_)}; }

 private:
  const QMatrix& q_;
  VectorXd e_;
  double theta_;
  MatrixXd a_;
  MatrixXd p_;
  VectorXd c_;
  Index n_ = 0;
};

}  // namespace

TrainResult train_totally_corrective(const Dataset& data, const BoostConfig& config, BoostMode mode,
                                     const std::vector<Stump>* warm_stumps) {
  config.validate();
  if (data.positives() < 1 || data.negatives() < 1) {
    throw std::invalid_argument("train_totally_corrective: need both classes");
  }
  if (mode == BoostMode::lac && config.n_max < default_min_weak_for_lac) {
    std::cerr << "tcboost: warning: LAC mode with n_max = " << config.n_max << " stays below "
              << default_min_weak_for_lac << " weak classifiers; the Gaussian-margin assumption is weak\n";
  }

  const OrderedDataset ordered = order_by_label(data);
  const Dataset& train = ordered.data;
  const Index m = train.size();
  const ClassVector cv = make_class_vector(train.labels());
  const QMatrix q = build_q(mode, train.positives(), train.negatives(), config.q_exact, config.delta);

  TrainResult result;
  result.feature_subset = sample_features(train.feature_count(), config.feature_fraction, config.seed);

  const Index capacity = std::max<Index>(config.n_max, warm_stumps ? static_cast<Index>(warm_stumps->size()) : 0);
  MasterProblem master(q, cv.e, config.theta, m, capacity);

  std::vector<Stump> stumps;
  VectorXd u = VectorXd::Constant(m, 1.0 / static_cast<double>(m));
  VectorXd w;
  DualCertificate cert;
  bool have_certificate = false;
  bool warned_mu = false;

  auto solve_master = [&](double new_stump_edge, int iteration) {
    std::optional<VectorXd> init;
    std::optional<VectorXd> incumbent;
    if (w.size() > 0) {
      init = warm_start(w, config.warm_start_mass);
      VectorXd embedded = VectorXd::Zero(master.cols());
      embedded.head(w.size()) = w;
      incumbent = std::move(embedded);
    }
    const SimplexQp qp = master.qp();
    const EgResult eg = eg_solve(qp, config.eg, init, incumbent);
    w = eg.w;
    const VectorXd rho = master.a() * w;
    cert = recover_dual(rho, q, cv.e, config.theta, master.a());
    u = cert.u;
    have_certificate = true;

    TraceRow row;
    row.iteration = iteration;
    row.primal_obj = eg.f;
    row.dual_obj = dual_objective(cert, q, cv.e, config.theta);
    row.edge = new_stump_edge;
    row.r = cert.r;
    row.mu_gap = cv.e.dot(rho);
    result.trace.push_back(row);
    if (row.mu_gap < 0.0 && !warned_mu) {
      std::cerr << "tcboost: warning: mu1 - mu2 = " << row.mu_gap << " < 0 at iteration " << iteration
                << "; the node objective's sign assumption is violated\n";
      warned_mu = true;
    }
  };

  int iteration = 0;
  if (warm_stumps != nullptr && !warm_stumps->empty()) {
    for (const Stump& stump : *warm_stumps) {
      stumps.push_back(stump);
      const VectorXd h = stump_responses(stump, train);
      master.append_column(h.cwiseProduct(train.labels().cast<double>()));
    }
    solve_master(std::numeric_limits<double>::quiet_NaN(), iteration);
  }

  while (static_cast<int>(stumps.size()) < config.n_max) {
    ++iteration;
    const StumpSearchResult found = best_stump(train, u, result.feature_subset, config.threads);
    // Optimality check (skipped until a certificate exists): a new column
    // only helps if its edge beats the largest current edge by epsilon.
    if (have_certificate && found.edge < cert.r + config.epsilon) {
      result.terminated_early = true;
      break;
    }
    stumps.push_back(found.stump);
    const VectorXd h = stump_responses(found.stump, train);
    master.append_column(h.cwiseProduct(train.labels().cast<double>()));
    solve_master(found.edge, iteration);
  }

  result.classifier.stumps = std::move(stumps);
  result.classifier.weights = w;
  result.classifier.offset = 0.0;  // set later by line search
  result.final_certificate = cert;
  return result;
}

VectorXd asym_tilt(const VectorXd& u, const VectorXi& labels, double k_asym, int n_max) {
  const double step = std::log(std::sqrt(k_asym)) / n_max;
  VectorXd tilted = u.cwiseProduct((step * labels.cast<double>().array()).exp().matrix());
  tilted /= tilted.sum();
  return tilted;
}

AdaBoostState adaboost_rounds(const Dataset& data, const BoostConfig& config, double k_asym, AdaBoostState initial) {
  config.validate();
  if (data.positives() < 1 || data.negatives() < 1) throw std::invalid_argument("adaboost_rounds: need both classes");
  // Coefficient cap for zero-error stumps.
  const double alpha_cap = 0.5 * std::log((1.0 - 1e-10) / 1e-10);

  AdaBoostState state = std::move(initial);
  const std::vector<int> subset = sample_features(data.feature_count(), config.feature_fraction, config.seed);
  const VectorXd y = data.labels().cast<double>();

  VectorXd u;
  if (state.stumps.empty()) {
    u = VectorXd::Constant(data.size(), 1.0 / static_cast<double>(data.size()));
  } else {
    // Continue boosting: weights implied by the existing raw classifier.
    VectorXd score = VectorXd::Zero(data.size());
    for (std::size_t j = 0; j < state.stumps.size(); ++j) {
      score += state.alphas[j] * stump_responses(state.stumps[j], data);
    }
    u = (-y.array() * score.array()).exp();
    u /= u.sum();
  }

  while (static_cast<int>(state.stumps.size()) < config.n_max) {
    if (k_asym != 1.0) u = asym_tilt(u, data.labels(), k_asym, config.n_max);
    const StumpSearchResult found = best_stump(data, u, subset, config.threads);
    // u is normalized, so weighted error = (1 - edge) / 2.
    const double error = 0.5 * (1.0 - found.edge);
    if (error <= 1e-12) {
      state.stumps.push_back(found.stump);
      state.alphas.push_back(alpha_cap);
      break;
    }
    if (found.edge <= 0.0) break;  // alpha would be <= 0: nothing left to learn
    const double alpha = 0.5 * std::log((1.0 - error) / error);
    const VectorXd h = stump_responses(found.stump, data);
    u = u.cwiseProduct((-alpha * y.array() * h.array()).exp().matrix());
    u /= u.sum();
    state.stumps.push_back(found.stump);
    state.alphas.push_back(alpha);
  }
  return state;
}

StrongClassifier classifier_from_state(const AdaBoostState& state) {
  StrongClassifier clf;
  clf.stumps = state.stumps;
  clf.weights.resize(static_cast<Index>(state.alphas.size()));
  double total = 0.0;
  for (const double a : state.alphas) total += a;
  for (std::size_t j = 0; j < state.alphas.size(); ++j) {
    clf.weights[static_cast<Index>(j)] = total > 0.0 ? state.alphas[j] / total : 0.0;
  }
  return clf;
}

TrainResult train_adaboost(const Dataset& data, const BoostConfig& config) {
  TrainResult result;
  result.classifier = classifier_from_state(adaboost_rounds(data, config, 1.0));
  return result;
}

TrainResult train_asymboost(const Dataset& data, const BoostConfig& config, double k_asym) {
  if (!(k_asym > 0.0)) throw std::invalid_argument("train_asymboost: k_asym must be positive");
  TrainResult result;
  result.classifier = classifier_from_state(adaboost_rounds(data, config, k_asym));
  return result;
}

}  // namespace tcboost
