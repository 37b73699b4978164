#include "tcboost/stump.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "tcboost/rng.hpp"

namespace tcboost {

VectorXd stump_responses(const Stump& stump, const Dataset& data) {
  const VectorXd column = data.feature_column(stump.feature);
  VectorXd out(column.size());
  for (Index i = 0; i < column.size(); ++i) out[i] = stump.predict(column[i]);
  return out;
}

namespace {

// (edge, feature, threshold, polarity) tie-break order: larger edge first,
// then lower feature, smaller threshold, polarity +1 before -1.
bool better(const StumpSearchResult& a, const StumpSearchResult& b) {
  if (a.edge != b.edge) return a.edge > b.edge;
  if (a.stump.feature != b.stump.feature) return a.stump.feature < b.stump.feature;
  if (a.stump.threshold != b.stump.threshold) return a.stump.threshold < b.stump.threshold;
  return a.stump.polarity > b.stump.polarity;
}

// Sort-and-sweep over one feature column. For polarity +1 and threshold t,
// edge(t) = total - 2 * sum of u_i y_i over examples with x_i < t, so
// sweeping sorted values yields every candidate from prefix sums. The
// polarity -1 edge is the exact negation.
StumpSearchResult scan_feature(int feature, const VectorXd& column, const VectorXd& signed_weights, double total) {
  const Index m = column.size();
  std::vector<Index> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(), [&](Index a, Index b) { return column[a] < column[b]; });

  StumpSearchResult best;
  bool have_best = false;
  auto consider = [&](double threshold, double prefix) {
    const double edge_pos = total - 2.0 * prefix;
    StumpSearchResult cand{Stump{feature, threshold, +1}, edge_pos};
    if (!have_best || better(cand, best)) {
      best = cand;
      have_best = true;
    }
    cand = StumpSearchResult{Stump{feature, threshold, -1}, -edge_pos};
    if (better(cand, best)) best = cand;
  };
  consider(column[order.front()] - 1.0, 0.0);  // sentinel below min: h = +1 everywhere at polarity +1

  double prefix = 0.0;
  for (Index k = 0; k < m; ++k) {
    prefix += signed_weights[order[static_cast<std::size_t>(k)]];
    const double value = column[order[static_cast<std::size_t>(k)]];
    if (k + 1 < m) {
      const double next = column[order[static_cast<std::size_t>(k + 1)]];
      if (next == value) continue;  // only distinct-value boundaries
      double threshold = 0.5 * (value + next);
      // Adjacent doubles can round the midpoint onto `value`; since
      // sign(0) = +1 that would move those examples across the split, so
      // fall back to splitting exactly at `next`.
      if (threshold <= value) threshold = next;
      consider(threshold, prefix);
    } else {
      double above = value + 1.0;  // sentinel above max: h = -1 everywhere at polarity +1
      if (above == value) above = std::nextafter(value, std::numeric_limits<double>::infinity());
      consider(above, prefix);
    }
  }
  // The sweep's prefix-sum edges can differ from a direct sum in the last
  // ulp, which would flip tie-breaks against equal-edge stumps on other
  // features. Re-evaluate the champion with the plain sequential sum.
  double exact_edge = 0.0;
  for (Index i = 0; i < m; ++i) exact_edge += signed_weights[i] * best.stump.predict(column[i]);
  best.edge = exact_edge;
  return best;
}

}  // namespace

StumpSearchResult best_stump(const Dataset& data, const VectorXd& weights, const std::vector<int>& feature_subset,
                             int threads) {
  if (feature_subset.empty()) throw std::invalid_argument("best_stump: empty feature subset");
  if (weights.size() != data.size()) throw std::invalid_argument("best_stump: weight length mismatch");

  const VectorXd signed_weights = weights.cwiseProduct(data.labels().cast<double>());
  const double total = signed_weights.sum();

  int worker_count = threads;
  if (worker_count <= 0) worker_count = static_cast<int>(std::thread::hardware_concurrency());
  worker_count = std::max(1, std::min<int>(worker_count, static_cast<int>(feature_subset.size())));

  std::vector<StumpSearchResult> per_worker(static_cast<std::size_t>(worker_count));
  auto run_chunk = [&](int worker) {
    StumpSearchResult local;
    bool first = true;
    for (std::size_t idx = static_cast<std::size_t>(worker); idx < feature_subset.size();
         idx += static_cast<std::size_t>(worker_count)) {
      const int feature = feature_subset[idx];
      const StumpSearchResult cand = scan_feature(feature, data.feature_column(feature), signed_weights, total);
      if (first || better(cand, local)) {
        local = cand;
        first = false;
      }
    }
    per_worker[static_cast<std::size_t>(worker)] = local;
  };

  if (worker_count == 1) {
    run_chunk(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(worker_count));
    for (int t = 0; t < worker_count; ++t) pool.emplace_back(run_chunk, t);
    for (auto& th : pool) th.join();
  }

  StumpSearchResult best = per_worker.front();
  for (std::size_t t = 1; t < per_worker.size(); ++t) {
    if (better(per_worker[t], best)) best = per_worker[t];
  }
  return best;
}

std::vector<int> sample_features(Index total, double fraction, std::uint64_t seed) {
  if (fraction <= 0.0 || fraction > 1.0) throw std::invalid_argument("sample_features: fraction must be in (0, 1]");
  const int count = static_cast<int>(std::ceil(fraction * static_cast<double>(total)));
  Rng rng(seed, "feature-sample");
  std::vector<int> indices = rng.sample_without_replacement(static_cast<int>(total), count);
  std::sort(indices.begin(), indices.end());
  return indices;
}

}  // namespace tcboost
