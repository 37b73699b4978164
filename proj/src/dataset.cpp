#include "tcboost/dataset.hpp"

#include <stdexcept>

namespace tcboost {

Dataset::Dataset(MatrixXd features, VectorXi labels)
    : mode_(Mode::vectors), features_(std::move(features)), labels_(std::move(labels)) {
  if (features_.rows() != labels_.size()) throw std::invalid_argument("Dataset: feature/label count mismatch");
  count_labels();
}

Dataset::Dataset(std::vector<GrayImage> windows, VectorXi labels)
    : mode_(Mode::images), windows_(std::move(windows)), labels_(std::move(labels)) {
  if (static_cast<Index>(windows_.size()) != labels_.size()) {
    throw std::invalid_argument("Dataset: window/label count mismatch");
  }
  if (windows_.empty()) throw std::invalid_argument("Dataset: no windows");
  window_w_ = windows_.front().width;
  window_h_ = windows_.front().height;
  integrals_.reserve(windows_.size());
  for (const auto& win : windows_) {
    if (win.width != window_w_ || win.height != window_h_) {
      throw std::invalid_argument("Dataset: windows differ in size");
    }
    integrals_.emplace_back(win);
  }
  haar_ = enumerate_features(window_w_, window_h_);
  count_labels();
}

void Dataset::count_labels() {
  m1_ = m2_ = 0;
  for (Index i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == 1) {
      ++m1_;
    } else if (labels_[i] == -1) {
      ++m2_;
    } else {
      throw std::invalid_argument("Dataset: labels must be +1 or -1");
    }
  }
}

Index Dataset::feature_count() const {
  return mode_ == Mode::vectors ? features_.cols() : static_cast<Index>(haar_.size());
}

double Dataset::feature_value(Index example, Index feature) const {
  if (mode_ == Mode::vectors) return features_(example, feature);
  return tcboost::feature_value(haar_[static_cast<std::size_t>(feature)], integrals_[static_cast<std::size_t>(example)]);
}

VectorXd Dataset::feature_column(Index feature) const {
  if (mode_ == Mode::vectors) return features_.col(feature);
  VectorXd col(size());
  for (Index i = 0; i < size(); ++i) col[i] = feature_value(i, feature);
  return col;
}

Dataset Dataset::subset(const std::vector<Index>& rows) const {
  VectorXi labels(static_cast<Index>(rows.size()));
  for (Index i = 0; i < labels.size(); ++i) labels[i] = labels_[rows[static_cast<std::size_t>(i)]];
  if (mode_ == Mode::vectors) {
    MatrixXd feats(static_cast<Index>(rows.size()), features_.cols());
    for (Index i = 0; i < feats.rows(); ++i) feats.row(i) = features_.row(rows[static_cast<std::size_t>(i)]);
    return Dataset(std::move(feats), std::move(labels));
  }
  std::vector<GrayImage> wins;
  wins.reserve(rows.size());
  for (const Index r : rows) wins.push_back(windows_[static_cast<std::size_t>(r)]);
  return Dataset(std::move(wins), std::move(labels));
}

Dataset Dataset::concat(const Dataset& a, const Dataset& b) {
  if (a.mode() != b.mode()) throw std::invalid_argument("Dataset::concat: mode mismatch");
  VectorXi labels(a.size() + b.size());
  labels << a.labels(), b.labels();
  if (a.mode() == Mode::vectors) {
    if (a.features().cols() != b.features().cols()) throw std::invalid_argument("Dataset::concat: dimension mismatch");
    MatrixXd feats(a.size() + b.size(), a.features().cols());
    feats << a.features(), b.features();
    return Dataset(std::move(feats), std::move(labels));
  }
  std::vector<GrayImage> wins = a.windows();
  wins.insert(wins.end(), b.windows().begin(), b.windows().end());
  return Dataset(std::move(wins), std::move(labels));
}

OrderedDataset order_by_label(const Dataset& dataset) {
  std::vector<Index> perm;
  perm.reserve(static_cast<std::size_t>(dataset.size()));
  for (Index i = 0; i < dataset.size(); ++i) {
    if (dataset.labels()[i] == 1) perm.push_back(i);
  }
  for (Index i = 0; i < dataset.size(); ++i) {
    if (dataset.labels()[i] == -1) perm.push_back(i);
  }
  return OrderedDataset{dataset.subset(perm), std::move(perm)};
}

ClassVector make_class_vector(const VectorXi& labels) {
  int m1 = 0, m2 = 0;
  for (Index i = 0; i < labels.size(); ++i) (labels[i] == 1 ? m1 : m2)++;
  if (m1 == 0 || m2 == 0) throw std::invalid_argument("make_class_vector: need both classes");
  ClassVector cv;
  cv.e1 = VectorXd::Zero(labels.size());
  cv.e2 = VectorXd::Zero(labels.size());
  for (Index i = 0; i < labels.size(); ++i) {
    if (labels[i] == 1) {
      cv.e1[i] = 1.0 / m1;
    } else {
      cv.e2[i] = 1.0 / m2;
    }
  }
  cv.e = cv.e1 + cv.e2;
  return cv;
}

ResponseMatrix::ResponseMatrix(VectorXi labels, Index capacity) : labels_(std::move(labels)) {
  h_.resize(labels_.size(), capacity);
  a_.resize(labels_.size(), capacity);
}

void ResponseMatrix::append_column(const VectorXd& h_column) {
  if (h_column.size() != labels_.size()) throw std::invalid_argument("ResponseMatrix: column length mismatch");
  if (n_ == h_.cols()) {
    // Past reserved capacity; grow without touching filled columns' values.
    const Index grown = std::max<Index>(2 * h_.cols(), 8);
    h_.conservativeResize(Eigen::NoChange, grown);
    a_.conservativeResize(Eigen::NoChange, grown);
  }
  h_.col(n_) = h_column;
  a_.col(n_) = h_column.cwiseProduct(labels_.cast<double>());
  ++n_;
}

VectorXd margins(const ResponseMatrix& response, const VectorXd& w) {
  if (w.size() != response.cols()) throw std::invalid_argument("margins: weight length != column count");
  return response.a() * w;
}

}  // namespace tcboost
