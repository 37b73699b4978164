#include "tcboost/cascade.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "tcboost/postprocess.hpp"
#include "tcboost/rng.hpp"

namespace tcboost {

const char* to_string(CascadeMethod method) {
  switch (method) {
    case CascadeMethod::fisherboost: return "fisherboost";
    case CascadeMethod::lacboost: return "lacboost";
    case CascadeMethod::ada: return "adaboost";
    case CascadeMethod::ada_lac: return "ada+lac";
    case CascadeMethod::ada_lda: return "ada+lda";
    case CascadeMethod::asym: return "asymboost";
    case CascadeMethod::asym_lac: return "asym+lac";
    case CascadeMethod::asym_lda: return "asym+lda";
  }
  return "?";
}

CascadeMethod cascade_method_from_string(const std::string& name) {
  if (name == "fisherboost") return CascadeMethod::fisherboost;
  if (name == "lacboost") return CascadeMethod::lacboost;
  if (name == "adaboost") return CascadeMethod::ada;
  if (name == "ada+lac") return CascadeMethod::ada_lac;
  if (name == "ada+lda") return CascadeMethod::ada_lda;
  if (name == "asymboost") return CascadeMethod::asym;
  if (name == "asym+lac") return CascadeMethod::asym_lac;
  if (name == "asym+lda") return CascadeMethod::asym_lda;
  throw std::invalid_argument("unknown method '" + name +
                              "'; valid: fisherboost lacboost adaboost asymboost ada+lac ada+lda asym+lac asym+lda");
}

namespace {

struct ThresholdSweep {
  // Candidate thresholds ascending; counts[k] examples have score < candidate k.
  std::vector<double> candidates;
  std::vector<Index> pos_below;  // positives with score < candidate
  std::vector<Index> neg_below;
  Index m1 = 0, m2 = 0;
};

ThresholdSweep sweep_thresholds(const VectorXd& scores, const VectorXi& labels) {
  const Index m = scores.size();
  std::vector<Index> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(), [&](Index a, Index b) { return scores[a] < scores[b]; });

  ThresholdSweep sweep;
  for (Index i = 0; i < m; ++i) (labels[i] == 1 ? sweep.m1 : sweep.m2)++;

  Index pos_seen = 0, neg_seen = 0;
  auto add = [&](double threshold) {
    sweep.candidates.push_back(threshold);
    sweep.pos_below.push_back(pos_seen);
    sweep.neg_below.push_back(neg_seen);
  };
  add(scores[order.front()] - 1.0);  // sentinel below min: everything passes
  for (Index k = 0; k < m; ++k) {
    (labels[order[static_cast<std::size_t>(k)]] == 1 ? pos_seen : neg_seen)++;
    const double value = scores[order[static_cast<std::size_t>(k)]];
    if (k + 1 < m) {
      const double next = scores[order[static_cast<std::size_t>(k + 1)]];
      if (next == value) continue;
      double mid = 0.5 * (value + next);
      if (mid <= value) mid = next;  // adjacent doubles; sign(0) = +1 keeps `next` passing
      add(mid);
    } else {
      double above = value + 1.0;  // sentinel above max: nothing passes
      if (above == value) above = std::nextafter(value, std::numeric_limits<double>::infinity());
      add(above);
    }
  }
  return sweep;
}

}  // namespace

double offset_line_search(const VectorXd& scores, const VectorXi& labels, double d_target, bool* flagged) {
  const ThresholdSweep sweep = sweep_thresholds(scores, labels);
  if (sweep.m1 < 1) throw std::invalid_argument("offset_line_search: need at least one positive");
  if (flagged) *flagged = false;

  // d and f are both nonincreasing in the threshold, so the largest
  // candidate still meeting d_target minimizes the false-positive rate.
  double best = sweep.candidates.front();
  Index best_pos_below = 0;
  bool feasible = false;
  for (std::size_t k = 0; k < sweep.candidates.size(); ++k) {
    const double d = static_cast<double>(sweep.m1 - sweep.pos_below[k]) / static_cast<double>(sweep.m1);
    if (d >= d_target) {
      best = sweep.candidates[k];
      best_pos_below = sweep.pos_below[k];
      feasible = true;
    }
  }
  if (!feasible) {
    if (flagged) *flagged = true;
    return sweep.candidates.front();  // accept everything; d_target was unreachable
  }
  if (best_pos_below == sweep.m1 && flagged) *flagged = true;  // rejects every positive
  return best;
}

double offset_for_fp_rate(const VectorXd& scores, const VectorXi& labels, double f_target) {
  const ThresholdSweep sweep = sweep_thresholds(scores, labels);
  if (sweep.m2 < 1) throw std::invalid_argument("offset_for_fp_rate: need at least one negative");
  for (std::size_t k = 0; k < sweep.candidates.size(); ++k) {
    const double f = static_cast<double>(sweep.m2 - sweep.neg_below[k]) / static_cast<double>(sweep.m2);
    if (f <= f_target) return sweep.candidates[k];  // smallest such threshold maximizes detection
  }
  return sweep.candidates.back();
}

namespace {

double exit_score(const MultiExitCascade::Exit& exit, const std::vector<Stump>& stumps, const Dataset& data,
                  Index row) {
  double s = -exit.offset;
  for (int j = 0; j < exit.prefix; ++j) {
    s += exit.weights[j] * stumps[static_cast<std::size_t>(j)].predict(data.feature_value(row, stumps[static_cast<std::size_t>(j)].feature));
  }
  return s;
}

bool cascade_passes(const MultiExitCascade& cascade, const Dataset& data, Index row) {
  for (const auto& exit : cascade.exits) {
    if (exit_score(exit, cascade.stumps, data, row) < 0.0) return false;
  }
  return true;
}

VectorXd prefix_scores(const std::vector<Stump>& stumps, const VectorXd& weights, const Dataset& data) {
  VectorXd scores = VectorXd::Zero(data.size());
  for (Index j = 0; j < weights.size(); ++j) {
    scores += weights[j] * stump_responses(stumps[static_cast<std::size_t>(j)], data);
  }
  return scores;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace

MultiExitCascade train_cascade(const Dataset& pos_data, const Dataset& neg_pool, const CascadeConfig& config,
                               CascadeMethod method, CascadeTrainReport* report) {
  if (config.exit_schedule.empty()) throw std::invalid_argument("train_cascade: empty exit schedule");
  for (std::size_t t = 1; t < config.exit_schedule.size(); ++t) {
    if (config.exit_schedule[t] <= config.exit_schedule[t - 1]) {
      throw std::invalid_argument("train_cascade: exit schedule must be strictly increasing");
    }
  }
  config.boost.validate();

  // Positives from pos_data, pool negatives from neg_pool.
  std::vector<Index> pos_rows, pool_rows;
  for (Index i = 0; i < pos_data.size(); ++i) {
    if (pos_data.labels()[i] == 1) pos_rows.push_back(i);
  }
  for (Index i = 0; i < neg_pool.size(); ++i) {
    if (neg_pool.labels()[i] == -1) pool_rows.push_back(i);
  }
  if (pos_rows.empty()) throw std::invalid_argument("train_cascade: no positives");
  if (pool_rows.empty()) throw std::invalid_argument("train_cascade: no negatives in pool");
  const Dataset positives = pos_data.subset(pos_rows);

  Rng pool_rng(config.boost.seed, "bootstrap");
  pool_rng.shuffle(pool_rows);
  const Index quota = config.neg_quota > 0 ? std::min<Index>(config.neg_quota, static_cast<Index>(pool_rows.size()))
                                           : static_cast<Index>(pool_rows.size());

  MultiExitCascade cascade;
  cascade.goals = config.goals;
  AdaBoostState ada_state;
  CascadeTrainReport local_report;

  std::vector<Index> current;  // rows of neg_pool in the working set
  std::size_t cursor = 0;
  while (static_cast<Index>(current.size()) < quota && cursor < pool_rows.size()) {
    current.push_back(pool_rows[cursor++]);
  }

  const double k_asym =
      (method == CascadeMethod::asym || method == CascadeMethod::asym_lac || method == CascadeMethod::asym_lda)
          ? config.boost.k_asym
          : 1.0;

  for (std::size_t t = 0; t < config.exit_schedule.size(); ++t) {
    if (current.empty()) {
      local_report.pool_exhausted = true;
      std::cerr << "tcboost: warning: negative pool exhausted; stopping after " << cascade.exits.size()
                << " exits\n";
      break;
    }
    const int target = config.exit_schedule[t];
    const Dataset train_set = Dataset::concat(positives, neg_pool.subset(current));

    BoostConfig boost = config.boost;
    boost.n_max = target;
    boost.seed = mix_seed(config.boost.seed, t);

    const bool gate = target >= config.min_weak_for_lac;
    const int prev_prefix = static_cast<int>(cascade.stumps.size());

    VectorXd weights;
    std::string postprocess_tag;
    bool postprocess_applied = false;

    const bool totally_corrective =
        (method == CascadeMethod::fisherboost || method == CascadeMethod::lacboost) && gate;
    if (totally_corrective) {
      const BoostMode mode = method == CascadeMethod::fisherboost ? BoostMode::fisher : BoostMode::lac;
      const TrainResult tc =
          train_totally_corrective(train_set, boost, mode, cascade.stumps.empty() ? nullptr : &cascade.stumps);
      cascade.stumps = tc.classifier.stumps;
      weights = tc.classifier.weights;
      local_report.trace.insert(local_report.trace.end(), tc.trace.begin(), tc.trace.end());
    } else {
      ada_state = adaboost_rounds(train_set, boost, k_asym, std::move(ada_state));
      cascade.stumps = ada_state.stumps;
      weights = classifier_from_state(ada_state).weights;
      const bool want_lac = method == CascadeMethod::ada_lac || method == CascadeMethod::asym_lac;
      const bool want_lda = method == CascadeMethod::ada_lda || method == CascadeMethod::asym_lda;
      if ((want_lac || want_lda) && gate) {
        // Recalibrate with the closed form over the exit's response matrix.
        MatrixXd h(train_set.size(), static_cast<Index>(cascade.stumps.size()));
        for (std::size_t j = 0; j < cascade.stumps.size(); ++j) {
          h.col(static_cast<Index>(j)) = stump_responses(cascade.stumps[j], train_set);
        }
        try {
          const ClassStats stats = estimate_stats(h, train_set.labels(), config.shrinkage);
          const LinearWeights lw = want_lac ? lac_weights(stats) : lda_weights(stats);
          if (lw.degenerate) throw std::runtime_error("degenerate direction");
          weights = lw.w;
          postprocess_tag = want_lac ? "lac" : "lda";
          postprocess_applied = true;
        } catch (const std::exception& err) {
          std::cerr << "tcboost: warning: exit " << t << " keeps boosted weights; recalibration failed ("
                    << err.what() << ")\n";
        }
      }
    }

    const int prefix = static_cast<int>(cascade.stumps.size());
    const VectorXd scores = prefix_scores(cascade.stumps, weights, train_set);
    // The node goal is two-sided: hit d_target while f_target caps the
    // false-positive rate by construction. When both cannot hold at the
    // exit's capacity, the false-positive budget wins and the detection
    // shortfall is flagged.
    bool offset_flagged = false;
    const double for_detection = offset_line_search(scores, train_set.labels(), config.goals.d_target, &offset_flagged);
    const double for_fp_budget = offset_for_fp_rate(scores, train_set.labels(), config.goals.f_target);
    const double offset = std::max(for_detection, for_fp_budget);

    Index pos_pass = 0, neg_pass = 0;
    for (Index i = 0; i < train_set.size(); ++i) {
      if (scores[i] - offset >= 0.0) (train_set.labels()[i] == 1 ? pos_pass : neg_pass)++;
    }

    ExitTrainInfo info;
    info.exit_index = static_cast<int>(t);
    info.prefix = prefix;
    info.d_train = static_cast<double>(pos_pass) / static_cast<double>(train_set.positives());
    info.f_train = static_cast<double>(neg_pass) / static_cast<double>(train_set.negatives());
    info.offset_flagged = offset_flagged || info.d_train < config.goals.d_target;
    info.postprocess_applied = postprocess_applied;
    info.grew = prefix > prev_prefix;
    info.negatives_used = static_cast<Index>(current.size());
    local_report.exits.push_back(info);

    MultiExitCascade::Exit exit;
    exit.prefix = prefix;
    exit.weights = weights;
    exit.offset = offset;
    exit.postprocess = postprocess_tag;
    if (!info.grew && !cascade.exits.empty()) {
      // Column generation added nothing; refresh the previous exit in place
      // so prefixes stay strictly increasing.
      cascade.exits.back() = exit;
    } else {
      cascade.exits.push_back(exit);
    }

    if (t + 1 == config.exit_schedule.size()) break;

    // Bootstrap: drop negatives the cascade now rejects, then refill with
    // pool negatives that survive it.
    std::vector<Index> kept;
    for (const Index row : current) {
      if (cascade_passes(cascade, neg_pool, row)) kept.push_back(row);
    }
    current = std::move(kept);
    while (static_cast<Index>(current.size()) < quota && cursor < pool_rows.size()) {
      const Index row = pool_rows[cursor++];
      if (cascade_passes(cascade, neg_pool, row)) current.push_back(row);
    }
    if (static_cast<Index>(current.size()) < quota) local_report.pool_exhausted = true;
  }

  if (report) *report = std::move(local_report);
  return cascade;
}

CascadeEvaluation evaluate_cascade(const MultiExitCascade& cascade, const Dataset& data) {
  CascadeEvaluation out;
  std::vector<Index> alive(static_cast<std::size_t>(data.size()));
  std::iota(alive.begin(), alive.end(), Index{0});
  Index total_pos = 0;
  for (Index i = 0; i < data.size(); ++i) {
    if (data.labels()[i] == 1) ++total_pos;
  }

  std::vector<Index> into_final;
  for (std::size_t t = 0; t < cascade.exits.size(); ++t) {
    const auto& exit = cascade.exits[t];
    if (t + 1 == cascade.exits.size()) into_final = alive;

    NodeReport::Node node;
    node.exit_index = static_cast<int>(t);
    node.prefix = exit.prefix;
    std::vector<Index> passed;
    for (const Index row : alive) {
      const bool positive = data.labels()[row] == 1;
      (positive ? node.pos_in : node.neg_in)++;
      if (exit_score(exit, cascade.stumps, data, row) >= 0.0) {
        (positive ? node.pos_pass : node.neg_pass)++;
        passed.push_back(row);
      }
    }
    node.d = node.pos_in > 0 ? static_cast<double>(node.pos_pass) / static_cast<double>(node.pos_in) : 1.0;
    node.f = node.neg_in > 0 ? static_cast<double>(node.neg_pass) / static_cast<double>(node.neg_in) : 1.0;
    out.report.f_dr *= node.d;
    out.report.f_fp *= node.f;
    out.report.nodes.push_back(node);
    alive = std::move(passed);
  }

  // ROC over the final exit's threshold, for survivors into the final exit.
  if (!cascade.exits.empty() && !into_final.empty()) {
    const auto& final_exit = cascade.exits.back();
    VectorXd raw(static_cast<Index>(into_final.size()));
    VectorXi labels(static_cast<Index>(into_final.size()));
    for (std::size_t i = 0; i < into_final.size(); ++i) {
      MultiExitCascade::Exit unshifted = final_exit;
      unshifted.offset = 0.0;
      raw[static_cast<Index>(i)] = exit_score(unshifted, cascade.stumps, data, into_final[i]);
      labels[static_cast<Index>(i)] = data.labels()[into_final[i]];
    }
    const ThresholdSweep sweep = sweep_thresholds(raw, labels);
    for (std::size_t k = 0; k < sweep.candidates.size(); ++k) {
      RocRow row;
      row.threshold = sweep.candidates[k];
      row.false_positives = sweep.m2 - sweep.neg_below[k];
      row.detection_rate =
          total_pos > 0 ? static_cast<double>(sweep.m1 - sweep.pos_below[k]) / static_cast<double>(total_pos) : 0.0;
      out.roc.push_back(row);
    }
  }
  return out;
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("normal_quantile: p must be in (0, 1)");
  // Acklam's rational approximation.
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,  -2.759285104469687e+02,
                             1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                             6.680131188771972e+01, -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                             -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                             3.754408661907416e+00};
  const double p_low = 0.02425;
  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  // One Halley step against the exact CDF brings the result near machine
  // precision.
  const double err = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
  const double u = err * std::sqrt(2.0 * M_PI) * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

NormalityResult normality_diagnostic(const VectorXd& positive_margins) {
  const Index m = positive_margins.size();
  if (m < 8) throw std::invalid_argument("normality_diagnostic: need at least 8 margins");
  std::vector<double> sorted(positive_margins.data(), positive_margins.data() + m);
  std::sort(sorted.begin(), sorted.end());

  NormalityResult result;
  result.quantile_pairs.reserve(static_cast<std::size_t>(m));
  for (Index i = 0; i < m; ++i) {
    const double p = (static_cast<double>(i) + 0.5) / static_cast<double>(m);
    result.quantile_pairs.emplace_back(sorted[static_cast<std::size_t>(i)], normal_quantile(p));
  }

  double mean_x = 0.0, mean_y = 0.0;
  for (const auto& [x, y] : result.quantile_pairs) {
    mean_x += x;
    mean_y += y;
  }
  mean_x /= static_cast<double>(m);
  mean_y /= static_cast<double>(m);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (const auto& [x, y] : result.quantile_pairs) {
    sxy += (x - mean_x) * (y - mean_y);
    sxx += (x - mean_x) * (x - mean_x);
    syy += (y - mean_y) * (y - mean_y);
  }
  if (sxx == 0.0 || syy == 0.0) {
    result.defined = false;
    result.r_normal = std::numeric_limits<double>::quiet_NaN();
  } else {
    result.defined = true;
    result.r_normal = sxy / std::sqrt(sxx * syy);
  }
  return result;
}

std::vector<double> default_theta_grid() {
  return {1.0 / 10, 1.0 / 12, 1.0 / 15, 1.0 / 20, 1.0 / 25, 1.0 / 30, 1.0 / 40, 1.0 / 50};
}

double theta_grid_search(const Dataset& pos_data, const Dataset& neg_pool, const CascadeConfig& short_config,
                         CascadeMethod method, const std::vector<double>& grid) {
  if (grid.empty()) throw std::invalid_argument("theta_grid_search: empty grid");
  double best_theta = grid.front();
  double best_accuracy = -1.0;
  for (const double theta : grid) {
    CascadeConfig config = short_config;
    config.boost.theta = theta;
    const MultiExitCascade cascade = train_cascade(pos_data, neg_pool, config, method);
    Index correct = 0, total = 0;
    for (Index i = 0; i < pos_data.size(); ++i) {
      if (pos_data.labels()[i] != 1) continue;
      ++total;
      if (cascade_passes(cascade, pos_data, i)) ++correct;
    }
    for (Index i = 0; i < neg_pool.size(); ++i) {
      if (neg_pool.labels()[i] != -1) continue;
      ++total;
      if (!cascade_passes(cascade, neg_pool, i)) ++correct;
    }
    const double accuracy = static_cast<double>(correct) / static_cast<double>(total);
    if (accuracy > best_accuracy || (accuracy == best_accuracy && theta > best_theta)) {
      best_accuracy = accuracy;
      best_theta = theta;
    }
  }
  return best_theta;
}

}  // namespace tcboost
