#pragma once

#include <cstdint>
#include <vector>

#include "tcboost/dataset.hpp"
#include "tcboost/types.hpp"

namespace tcboost {

/// Decision stump: predict(x) = polarity * sign(x[feature] - threshold),
/// with sign(0) = +1 fixed globally.
struct Stump {
  Index feature = 0;
  double threshold = 0.0;
  int polarity = +1;

  int predict(double feature_value) const { return polarity * sign_pm1(feature_value - threshold); }
};

/// Stump responses over a whole dataset, as a +-1 column.
VectorXd stump_responses(const Stump& stump, const Dataset& data);

struct StumpSearchResult {
  Stump stump;
  double edge = 0.0;
};

/// The stump maximizing the weighted edge sum_i u_i y_i h(x_i) over every
/// (feature in subset, threshold, polarity) triple. Thresholds are the
/// midpoints between consecutive distinct sorted feature values plus one
/// sentinel below the minimum and one above the maximum.
///
/// Boosting passes nonnegative example weights; the dual weights recovered
/// during column generation may carry negative components, and the search
/// honors them (the edge is just an inner product).
///
/// Ties break deterministically: lowest feature index, then smallest
/// threshold, then polarity +1. The scan parallelizes across features
/// (`threads` <= 0 means hardware concurrency); the reduction is by the
/// tie-break order, so results are independent of the thread count.
StumpSearchResult best_stump(const Dataset& data, const VectorXd& weights, const std::vector<int>& feature_subset,
                             int threads = 1);

/// ceil(fraction * total) distinct feature indices drawn uniformly without
/// replacement; deterministic for a given seed, returned sorted.
std::vector<int> sample_features(Index total, double fraction, std::uint64_t seed);

}  // namespace tcboost
