#pragma once

#include "tcboost/types.hpp"

namespace tcboost {

/// Per-class sample moments of weak-classifier responses, with shrinkage
/// (1 - s) Sigma + s (trace(Sigma)/n) I applied to both covariances.
struct ClassStats {
  VectorXd mu1;
  VectorXd mu2;
  MatrixXd sigma1;
  MatrixXd sigma2;
  int m1 = 0;
  int m2 = 0;
  double shrinkage = 0.0;
};

/// Sample means and unbiased covariances of h_matrix rows per class.
/// Requires at least 2 members per class.
ClassStats estimate_stats(const Eigen::Ref<const MatrixXd>& h_matrix, const VectorXi& labels, double shrinkage = 1e-3);

struct LinearWeights {
  VectorXd w;
  double b = 0.0;
  bool degenerate = false;  // mu1 == mu2: zero direction
};

/// Linear asymmetric classifier closed form: solve Sigma1 w = mu1 - mu2,
/// b = w'mu2. The scale of w is left as the solve produces it; the decision
/// rule sign(w'H(x) - b) is invariant to positive rescaling.
/// Throws if the shrunk Sigma1 is not positive definite.
LinearWeights lac_weights(const ClassStats& stats);

/// Fisher LDA direction with the class-weighted within-class scatter
/// C_w = (m1/m) Sigma1 + (m2/m) Sigma2: solve C_w w = mu1 - mu2, b = w'mu2.
LinearWeights lda_weights(const ClassStats& stats);

/// The asymmetric separation ratio w'(mu1 - mu2) / sqrt(w' Sigma w); the
/// quantity lac_weights maximizes over directions (with Sigma = Sigma1).
double separation_ratio(const VectorXd& w, const VectorXd& mu1, const VectorXd& mu2, const MatrixXd& sigma);

}  // namespace tcboost
