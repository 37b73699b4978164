#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tcboost/booster.hpp"
#include "tcboost/dataset.hpp"
#include "tcboost/types.hpp"

namespace tcboost {

enum class CascadeMethod { fisherboost, lacboost, ada, ada_lac, ada_lda, asym, asym_lac, asym_lda };

const char* to_string(CascadeMethod method);
CascadeMethod cascade_method_from_string(const std::string& name);

struct NodeGoals {
  double d_target = 0.997;
  double f_target = 0.5;
};

/// Multi-exit cascade: one shared ordered stump list; every exit classifies
/// with all stumps up to its prefix length under its own weights and offset.
struct MultiExitCascade {
  struct Exit {
    int prefix = 0;
    VectorXd weights;  // length == prefix
    double offset = 0.0;
    std::string postprocess;  // "", "lac", "lda"
  };
  std::vector<Stump> stumps;
  std::vector<Exit> exits;
  NodeGoals goals;
};

struct CascadeConfig {
  std::vector<int> exit_schedule;  // strictly increasing prefix lengths
  NodeGoals goals;
  int min_weak_for_lac = default_min_weak_for_lac;
  Index neg_quota = 0;  // negatives per exit; 0 means the pool's size
  double shrinkage = 1e-3;
  BoostConfig boost;
};

struct ExitTrainInfo {
  int exit_index = 0;
  int prefix = 0;
  double d_train = 0.0;  // at the chosen offset, on that exit's training set
  double f_train = 0.0;
  bool offset_flagged = false;
  bool postprocess_applied = false;
  bool grew = true;  // false when column generation terminated before adding stumps
  Index negatives_used = 0;
};

struct CascadeTrainReport {
  std::vector<ExitTrainInfo> exits;
  bool pool_exhausted = false;
  std::vector<TraceRow> trace;  // concatenated booster traces
};

/// Stage-by-stage multi-exit training with negative bootstrapping: each exit
/// is trained on the positives plus the negatives currently surviving the
/// cascade, refilled from the pool up to the quota after every exit.
/// FisherBoost/LACBoost exits continue column generation over the shared
/// stump list; Ada/Asym exits continue stagewise boosting; +lac/+lda methods
/// recalibrate exit weights with the closed forms. LAC/LDA/LACBoost weighting
/// is skipped (plain AdaBoost-style training instead) while the prefix is
/// shorter than min_weak_for_lac.
///
/// Each exit's offset is the larger of the detection-rate line search result
/// and the false-positive budget threshold, so measured f_t <= f_target
/// holds by construction; exits whose capacity cannot also reach d_target
/// are flagged in the report.
MultiExitCascade train_cascade(const Dataset& pos_data, const Dataset& neg_pool, const CascadeConfig& config,
                               CascadeMethod method, CascadeTrainReport* report = nullptr);

/// Largest threshold whose detection rate on `scores` is >= d_target;
/// candidates are midpoints of sorted distinct scores plus sentinels. Among
/// candidates meeting d_target this minimizes the false-positive rate. When
/// no candidate reaches d_target the sentinel below the minimum score is
/// returned and *flagged is set; *flagged is also set when the chosen
/// threshold rejects every positive.
double offset_line_search(const VectorXd& scores, const VectorXi& labels, double d_target, bool* flagged = nullptr);

/// Smallest threshold whose false-positive rate is <= f_target (maximizing
/// detection subject to the false-positive budget).
double offset_for_fp_rate(const VectorXd& scores, const VectorXi& labels, double f_target);

struct NodeReport {
  struct Node {
    int exit_index = 0;
    int prefix = 0;
    double d = 1.0;  // conditioned on survival to this exit
    double f = 1.0;
    Index pos_in = 0, pos_pass = 0, neg_in = 0, neg_pass = 0;
  };
  std::vector<Node> nodes;
  double f_dr = 1.0;  // product of per-node d
  double f_fp = 1.0;  // product of per-node f
};

struct RocRow {
  double threshold = 0.0;
  Index false_positives = 0;  // count
  double detection_rate = 0.0;
};

struct CascadeEvaluation {
  NodeReport report;
  std::vector<RocRow> roc;  // swept over the final exit's offset
};

/// Per-exit rates conditioned on survival, cascade products, and the ROC of
/// the full cascade swept over the final exit's threshold. Examples rejected
/// at an exit are never scored by later exits.
CascadeEvaluation evaluate_cascade(const MultiExitCascade& cascade, const Dataset& data);

struct NormalityResult {
  std::vector<std::pair<double, double>> quantile_pairs;  // (sorted margin, normal quantile)
  double r_normal = 0.0;
  bool defined = false;  // false when margins are constant
};

/// Normal probability plot data for positive margins: sorted margins paired
/// with standard normal quantiles at plotting positions (i - 0.5)/m, plus
/// their Pearson correlation. Requires at least 8 margins.
NormalityResult normality_diagnostic(const VectorXd& positive_margins);

/// Inverse standard normal CDF (Acklam's rational approximation polished
/// with one Halley step; accurate to ~1e-15).
double normal_quantile(double p);

/// The paper-standard candidate set {1/10, 1/12, 1/15, 1/20, 1/25, 1/30,
/// 1/40, 1/50}.
std::vector<double> default_theta_grid();

/// Trains a short cascade per candidate theta and returns the one with the
/// best training accuracy over positives plus the negative pool; ties go to
/// the larger theta.
double theta_grid_search(const Dataset& pos_data, const Dataset& neg_pool, const CascadeConfig& short_config,
                         CascadeMethod method, const std::vector<double>& grid);

}  // namespace tcboost
