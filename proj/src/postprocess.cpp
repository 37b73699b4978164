#include "tcboost/postprocess.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <stdexcept>

namespace tcboost {

ClassStats estimate_stats(const Eigen::Ref<const MatrixXd>& h_matrix, const VectorXi& labels, double shrinkage) {
  if (h_matrix.rows() != labels.size()) throw std::invalid_argument("estimate_stats: row/label mismatch");
  const Index n = h_matrix.cols();
  ClassStats stats;
  stats.shrinkage = shrinkage;
  for (Index i = 0; i < labels.size(); ++i) (labels[i] == 1 ? stats.m1 : stats.m2)++;
  if (stats.m1 < 2 || stats.m2 < 2) throw std::invalid_argument("estimate_stats: each class needs >= 2 members");

  auto moments = [&](int label, int count, VectorXd& mu, MatrixXd& sigma) {
    mu = VectorXd::Zero(n);
    for (Index i = 0; i < labels.size(); ++i) {
      if (labels[i] == label) mu += h_matrix.row(i).transpose();
    }
    mu /= count;
    sigma = MatrixXd::Zero(n, n);
    for (Index i = 0; i < labels.size(); ++i) {
      if (labels[i] == label) {
        const VectorXd centered = h_matrix.row(i).transpose() - mu;
        sigma += centered * centered.transpose();
      }
    }
    sigma /= count - 1;
    const double ridge = shrinkage * sigma.trace() / static_cast<double>(n);
    sigma = (1.0 - shrinkage) * sigma + ridge * MatrixXd::Identity(n, n);
  };
  moments(+1, stats.m1, stats.mu1, stats.sigma1);
  moments(-1, stats.m2, stats.mu2, stats.sigma2);
  return stats;
}

namespace {

VectorXd solve_spd(const MatrixXd& matrix, const VectorXd& rhs, const char* what) {
  const Eigen::LLT<MatrixXd> llt(matrix);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error(std::string(what) + ": matrix not positive definite after shrinkage");
  }
  return llt.solve(rhs);
}

}  // namespace

LinearWeights lac_weights(const ClassStats& stats) {
  LinearWeights out;
  const VectorXd diff = stats.mu1 - stats.mu2;
  out.w = solve_spd(stats.sigma1, diff, "lac_weights");
  out.b = out.w.dot(stats.mu2);
  out.degenerate = diff.lpNorm<Eigen::Infinity>() == 0.0;
  return out;
}

LinearWeights lda_weights(const ClassStats& stats) {
  LinearWeights out;
  const double m = stats.m1 + stats.m2;
  const MatrixXd cw = (stats.m1 / m) * stats.sigma1 + (stats.m2 / m) * stats.sigma2;
  const VectorXd diff = stats.mu1 - stats.mu2;
  out.w = solve_spd(cw, diff, "lda_weights");
  out.b = out.w.dot(stats.mu2);
  out.degenerate = diff.lpNorm<Eigen::Infinity>() == 0.0;
  return out;
}

double separation_ratio(const VectorXd& w, const VectorXd& mu1, const VectorXd& mu2, const MatrixXd& sigma) {
  const double denom = std::sqrt(w.dot(sigma * w));
  return w.dot(mu1 - mu2) / denom;
}

}  // namespace tcboost
