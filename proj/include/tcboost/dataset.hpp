#pragma once

#include <string>
#include <vector>

#include "tcboost/haar.hpp"
#include "tcboost/types.hpp"

namespace tcboost {

/// Labeled training examples: either raw feature vectors (one row per
/// example) or grayscale windows of one fixed size, with the Haar feature
/// space enumerated over the window. Labels are +1 / -1.
///
/// Immutable after construction; safe for concurrent read-only use.
class Dataset {
 public:
  enum class Mode { vectors, images };

  Dataset() = default;
  Dataset(MatrixXd features, VectorXi labels);
  Dataset(std::vector<GrayImage> windows, VectorXi labels);

  Mode mode() const { return mode_; }
  Index size() const { return labels_.size(); }
  int positives() const { return m1_; }
  int negatives() const { return m2_; }
  const VectorXi& labels() const { return labels_; }

  Index feature_count() const;
  double feature_value(Index example, Index feature) const;
  /// The feature column over all examples (length m).
  VectorXd feature_column(Index feature) const;

  const MatrixXd& features() const { return features_; }
  const std::vector<GrayImage>& windows() const { return windows_; }
  int window_width() const { return window_w_; }
  int window_height() const { return window_h_; }
  const std::vector<HaarFeature>& haar_features() const { return haar_; }

  /// Row subset, keeping order.
  Dataset subset(const std::vector<Index>& rows) const;
  /// Row-wise concatenation; both sides must share mode and dimensionality.
  static Dataset concat(const Dataset& a, const Dataset& b);

 private:
  void count_labels();

  Mode mode_ = Mode::vectors;
  MatrixXd features_;  // m x d (vector mode)
  std::vector<GrayImage> windows_;
  std::vector<IntegralImage> integrals_;
  std::vector<HaarFeature> haar_;
  int window_w_ = 0;
  int window_h_ = 0;
  VectorXi labels_;
  int m1_ = 0;
  int m2_ = 0;
};

/// Dataset reordered positives-first, stable within each class, plus the
/// permutation that maps ordered index -> original index.
struct OrderedDataset {
  Dataset data;
  std::vector<Index> permutation;
};

OrderedDataset order_by_label(const Dataset& dataset);

/// The class-indicator vectors e1, e2 and e = e1 + e2 of Fisher/LAC problems:
/// e1_i = 1/m1 on positives, e2_i = 1/m2 on negatives.
struct ClassVector {
  VectorXd e1;
  VectorXd e2;
  VectorXd e;
};

ClassVector make_class_vector(const VectorXi& labels);

/// The weak-classifier output matrices grown column-by-column during column
/// generation: H_ij = h_j(x_i) and A_ij = y_i H_ij, both in {-1, +1}.
/// Column-major storage; capacity is reserved up front so appends never move
/// existing columns.
class ResponseMatrix {
 public:
  ResponseMatrix(VectorXi labels, Index capacity);

  Index rows() const { return labels_.size(); }
  Index cols() const { return n_; }

  void append_column(const VectorXd& h_column);

  /// Views over the filled columns.
  auto h() const { return h_.leftCols(n_); }
  auto a() const { return a_.leftCols(n_); }

 private:
  VectorXi labels_;
  MatrixXd h_;
  MatrixXd a_;
  Index n_ = 0;
};

/// rho = A w. Throws on dimension mismatch.
VectorXd margins(const ResponseMatrix& response, const VectorXd& w);

}  // namespace tcboost
