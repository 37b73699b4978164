#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tcboost/dataset.hpp"
#include "tcboost/qmatrix.hpp"
#include "tcboost/simplex_qp.hpp"
#include "tcboost/stump.hpp"
#include "tcboost/types.hpp"

namespace tcboost {

/// Below this many weak classifiers the Gaussian-margin assumption behind
/// LAC/LDA weighting is unreliable; cascade training gates on it.
constexpr int default_min_weak_for_lac = 30;

struct BoostConfig {
  double theta = 0.1;            // asymmetry/regularization parameter, (0, 1]
  double epsilon = 1e-5;         // column-generation termination threshold
  int n_max = 200;               // maximum weak classifiers
  double delta = 1e-6;           // Q regularization for the dual inverse
  bool q_exact = false;          // exact block Q instead of the diagonal approximation
  double feature_fraction = 1.0; // fraction of features searched per training run
  std::uint64_t seed = 0;
  double k_asym = 1.0;           // AsymBoost asymmetry factor
  int threads = 1;               // stump-search workers; <= 0 means hardware
  EgOptions eg;                  // primal solver knobs
  double warm_start_mass = 1e-2; // new-coordinate mass for EG warm starts

  void validate() const;
};

/// F(x) = sum_j weights_j h_j(x) - offset; predict = sign(F(x)).
/// Boosted classifiers carry simplex weights; LAC/LDA post-processing
/// replaces them with unconstrained ones and records its provenance.
struct StrongClassifier {
  std::vector<Stump> stumps;
  VectorXd weights;
  double offset = 0.0;
  std::string postprocess;  // "", "lac", "lda"
};

/// F(x) for every example.
VectorXd decision_scores(const StrongClassifier& classifier, const Dataset& data);
VectorXi predict(const StrongClassifier& classifier, const Dataset& data);

/// Dual variables of the node QP recovered from the primal solution.
struct DualCertificate {
  VectorXd u;
  double r = 0.0;
};

/// P = A'QA (symmetrized), c = theta (e'A)'.
SimplexQp assemble_qp(const Eigen::Ref<const MatrixXd>& a_matrix, const QMatrix& q, const VectorXd& e, double theta);

/// u = -Q rho + theta e and r = max_j sum_i u_i A_ij over the selected
/// columns (the largest edge over the current weak classifiers).
DualCertificate recover_dual(const VectorXd& rho, const QMatrix& q, const VectorXd& e, double theta,
                             const Eigen::Ref<const MatrixXd>& a_matrix);

/// -r - 1/2 (u - theta e)'(Q + delta I)^{-1}(u - theta e).
double dual_objective(const DualCertificate& cert, const QMatrix& q, const VectorXd& e, double theta);

struct TraceRow {
  int iteration = 0;
  double primal_obj = 0.0;
  double dual_obj = 0.0;
  double edge = 0.0;
  double r = 0.0;
  double mu_gap = 0.0;  // mu1 - mu2 = e' rho
};

struct TrainResult {
  StrongClassifier classifier;
  std::vector<TraceRow> trace;
  bool terminated_early = false;     // epsilon test fired before n_max
  DualCertificate final_certificate; // (u, r) at the last solve
  std::vector<int> feature_subset;   // sampled feature pool used throughout
};

/// Column generation for the Fisher/LAC node QP: repeatedly pick the
/// largest-edge stump under the dual weights, append its response column,
/// re-solve the simplex QP with warm-started entropic gradient descent, and
/// recover the dual certificate; stops when no stump's edge exceeds r by
/// epsilon. `warm_stumps` seeds the column set (their weights are fully
/// re-optimized), which is how multi-exit cascade training continues a node.
TrainResult train_totally_corrective(const Dataset& data, const BoostConfig& config, BoostMode mode,
                                     const std::vector<Stump>* warm_stumps = nullptr);

/// Stagewise coefficients kept in raw (unnormalized) form so cascade
/// training can continue boosting from an existing prefix.
struct AdaBoostState {
  std::vector<Stump> stumps;
  std::vector<double> alphas;
};

/// The AsymBoost per-round reweighting: u_i scaled by
/// exp(y_i log(sqrt(k_asym)) / n_max) and renormalized, shifting mass toward
/// positives when k_asym > 1.
VectorXd asym_tilt(const VectorXd& u, const VectorXi& labels, double k_asym, int n_max);

/// Discrete AdaBoost rounds (k_asym = 1) or AsymBoost rounds (k_asym != 1,
/// asym_tilt applied before each round) until config.n_max total stumps.
/// Stops early on a zero-edge stump; a zero-error stump gets a capped
/// coefficient.
AdaBoostState adaboost_rounds(const Dataset& data, const BoostConfig& config, double k_asym,
                              AdaBoostState initial = {});

TrainResult train_adaboost(const Dataset& data, const BoostConfig& config);
TrainResult train_asymboost(const Dataset& data, const BoostConfig& config, double k_asym);

/// Normalized strong classifier from raw stagewise coefficients.
StrongClassifier classifier_from_state(const AdaBoostState& state);

}  // namespace tcboost
