#pragma once

// Test-only oracles: independent, deliberately naive implementations used to
// cross-check the library. None of these share code with the paths they
// verify.

#include <algorithm>
#include <cmath>
#include <vector>

#include "tcboost/dataset.hpp"
#include "tcboost/haar.hpp"
#include "tcboost/stump.hpp"
#include "tcboost/types.hpp"

namespace oracles {

using tcboost::Index;
using tcboost::MatrixXd;
using tcboost::VectorXd;
using tcboost::VectorXi;

// Rectangle sum by a double loop over pixels, rows [r1, r2) x cols [c1, c2).
inline std::int64_t naive_rect_sum(const tcboost::GrayImage& image, int r1, int c1, int r2, int c2) {
  std::int64_t sum = 0;
  for (int r = r1; r < r2; ++r) {
    for (int c = c1; c < c2; ++c) sum += image.at(r, c);
  }
  return sum;
}

// Haar value from per-pixel signed weights.
inline double naive_feature_value(const tcboost::HaarFeature& f, const tcboost::GrayImage& image) {
  std::int64_t value = 0;
  for (int r = f.y; r < f.y + f.height; ++r) {
    for (int c = f.x; c < f.x + f.width; ++c) {
      int weight = 0;
      const int dx = c - f.x, dy = r - f.y;
      switch (f.type) {
        case tcboost::HaarType::two_rect_horizontal:
          weight = dx < f.width / 2 ? -1 : +1;
          break;
        case tcboost::HaarType::two_rect_vertical:
          weight = dy < f.height / 2 ? -1 : +1;
          break;
        case tcboost::HaarType::three_rect_horizontal:
          weight = (dx >= f.width / 3 && dx < 2 * (f.width / 3)) ? -2 : +1;
          break;
        case tcboost::HaarType::three_rect_vertical:
          weight = (dy >= f.height / 3 && dy < 2 * (f.height / 3)) ? -2 : +1;
          break;
        case tcboost::HaarType::four_rect_diagonal: {
          const bool left = dx < f.width / 2;
          const bool top = dy < f.height / 2;
          weight = (left == top) ? +1 : -1;
          break;
        }
      }
      value += weight * image.at(r, c);
    }
  }
  return static_cast<double>(value);
}

// Closed-form count of scaled placements of a (bw x bh) base template in a
// W x H window: sum over scales of (W - bw*a + 1)(H - bh*b + 1).
inline long placement_count(int window_w, int window_h, int bw, int bh) {
  long count = 0;
  for (int a = 1; bw * a <= window_w; ++a) {
    for (int b = 1; bh * b <= window_h; ++b) {
      count += static_cast<long>(window_w - bw * a + 1) * static_cast<long>(window_h - bh * b + 1);
    }
  }
  return count;
}

inline long haar_count(int window_w, int window_h) {
  return placement_count(window_w, window_h, 2, 1) + placement_count(window_w, window_h, 1, 2) +
         placement_count(window_w, window_h, 3, 1) + placement_count(window_w, window_h, 1, 3) +
         placement_count(window_w, window_h, 2, 2);
}

// Exhaustive stump search: every (feature, candidate threshold, polarity)
// triple evaluated by a full O(m) scan. Same candidate set and tie-break
// order as the library, independent arithmetic.
inline tcboost::StumpSearchResult brute_force_best_stump(const tcboost::Dataset& data, const VectorXd& weights,
                                                         const std::vector<int>& feature_subset) {
  tcboost::StumpSearchResult best;
  bool have = false;
  auto consider = [&](const tcboost::Stump& stump) {
    double edge = 0.0;
    for (Index i = 0; i < data.size(); ++i) {
      edge += weights[i] * data.labels()[i] * stump.predict(data.feature_value(i, stump.feature));
    }
    const tcboost::StumpSearchResult cand{stump, edge};
    const bool better = !have || cand.edge > best.edge ||
                        (cand.edge == best.edge &&
                         (cand.stump.feature < best.stump.feature ||
                          (cand.stump.feature == best.stump.feature &&
                           (cand.stump.threshold < best.stump.threshold ||
                            (cand.stump.threshold == best.stump.threshold &&
                             cand.stump.polarity > best.stump.polarity)))));
    if (better) {
      best = cand;
      have = true;
    }
  };
  for (const int feature : feature_subset) {
    std::vector<double> values;
    for (Index i = 0; i < data.size(); ++i) values.push_back(data.feature_value(i, feature));
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    std::vector<double> candidates;
    candidates.push_back(values.front() - 1.0);
    for (std::size_t k = 0; k + 1 < values.size(); ++k) {
      double mid = 0.5 * (values[k] + values[k + 1]);
      if (mid <= values[k]) mid = values[k + 1];
      candidates.push_back(mid);
    }
    double above = values.back() + 1.0;
    if (above == values.back()) above = std::nextafter(values.back(), 1e308);
    candidates.push_back(above);
    for (const double threshold : candidates) {
      for (const int polarity : {+1, -1}) consider(tcboost::Stump{feature, threshold, polarity});
    }
  }
  return best;
}

// rho' Q rho through the paper's pairwise-difference form:
// sum over blocks of (mb/m) * 1/(mb(mb-1)) * sum_{i>k} (rho_i - rho_k)^2.
inline double pairwise_quadratic_form(const VectorXd& rho, int m1, int m2, bool lac) {
  const int m = m1 + m2;
  auto block_term = [&](int offset, int mb) {
    double sum = 0.0;
    for (int i = 1; i < mb; ++i) {
      for (int k = 0; k < i; ++k) {
        const double diff = rho[offset + i] - rho[offset + k];
        sum += diff * diff;
      }
    }
    return (static_cast<double>(mb) / m) * sum / (static_cast<double>(mb) * (mb - 1));
  };
  double total = block_term(0, m1);
  if (!lac) total += block_term(m1, m2);
  return total;
}

// Class moments by plain two-pass scalar loops.
struct NaiveStats {
  VectorXd mu1, mu2;
  MatrixXd sigma1, sigma2;
};

inline NaiveStats naive_class_moments(const MatrixXd& h, const VectorXi& labels) {
  const Index n = h.cols();
  NaiveStats stats;
  auto compute = [&](int label, VectorXd& mu, MatrixXd& sigma) {
    int count = 0;
    mu = VectorXd::Zero(n);
    for (Index i = 0; i < h.rows(); ++i) {
      if (labels[i] == label) {
        ++count;
        for (Index j = 0; j < n; ++j) mu[j] += h(i, j);
      }
    }
    for (Index j = 0; j < n; ++j) mu[j] /= count;
    sigma = MatrixXd::Zero(n, n);
    for (Index i = 0; i < h.rows(); ++i) {
      if (labels[i] != label) continue;
      for (Index a = 0; a < n; ++a) {
        for (Index b = 0; b < n; ++b) sigma(a, b) += (h(i, a) - mu[a]) * (h(i, b) - mu[b]);
      }
    }
    sigma /= count - 1;
  };
  compute(+1, stats.mu1, stats.sigma1);
  compute(-1, stats.mu2, stats.sigma2);
  return stats;
}

// Textbook discrete AdaBoost on top of the brute-force stump search.
struct TextbookAdaBoost {
  std::vector<tcboost::Stump> stumps;
  std::vector<double> alphas;
};

inline TextbookAdaBoost textbook_adaboost(const tcboost::Dataset& data, int rounds,
                                          const std::vector<int>& features) {
  TextbookAdaBoost model;
  const Index m = data.size();
  VectorXd weights = VectorXd::Constant(m, 1.0 / static_cast<double>(m));
  for (int t = 0; t < rounds; ++t) {
    const tcboost::StumpSearchResult found = brute_force_best_stump(data, weights, features);
    double error = 0.0;
    for (Index i = 0; i < m; ++i) {
      if (found.stump.predict(data.feature_value(i, found.stump.feature)) != data.labels()[i]) error += weights[i];
    }
    if (error <= 1e-12) {
      model.stumps.push_back(found.stump);
      model.alphas.push_back(0.5 * std::log((1.0 - 1e-10) / 1e-10));
      break;
    }
    if (error >= 0.5) break;
    const double alpha = 0.5 * std::log((1.0 - error) / error);
    for (Index i = 0; i < m; ++i) {
      const int h = found.stump.predict(data.feature_value(i, found.stump.feature));
      weights[i] *= std::exp(-alpha * data.labels()[i] * h);
    }
    weights /= weights.sum();
    model.stumps.push_back(found.stump);
    model.alphas.push_back(alpha);
  }
  return model;
}

inline double training_error(const std::vector<tcboost::Stump>& stumps, const std::vector<double>& alphas,
                             const tcboost::Dataset& data) {
  Index wrong = 0;
  for (Index i = 0; i < data.size(); ++i) {
    double score = 0.0;
    for (std::size_t j = 0; j < stumps.size(); ++j) {
      score += alphas[j] * stumps[j].predict(data.feature_value(i, stumps[j].feature));
    }
    if (tcboost::sign_pm1(score) != data.labels()[i]) ++wrong;
  }
  return static_cast<double>(wrong) / static_cast<double>(data.size());
}

}  // namespace oracles
