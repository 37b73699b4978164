#pragma once

#include "tcboost/types.hpp"

namespace tcboost {

enum class BoostMode { fisher, lac };

/// The block-diagonal quadratic form of the Fisher/LAC node objective.
///
/// Exact form: each class block has diagonal 1/m and off-diagonal
/// -1/(m (mb - 1)) for block size mb, which is (mb/(m(mb-1))) times the
/// centering matrix -- symmetric, PSD, rows summing to zero. LAC zeroes the
/// negative block. The approximate form (valid for large classes) replaces
/// each nonzero block with (1/m) I.
///
/// Never materialized during training: apply and the (Q + delta I)^{-1}
/// solve use the block structure in O(m). delta regularizes the inverse
/// only; apply() is the plain Q.
struct QMatrix {
  BoostMode mode = BoostMode::fisher;
  bool exact = false;
  int m1 = 0;
  int m2 = 0;
  double delta = 1e-6;

  int m() const { return m1 + m2; }

  VectorXd apply(const VectorXd& x) const;

  /// y = (Q + delta I)^{-1} x via Sherman-Morrison on each block.
  VectorXd solve_regularized(const VectorXd& x) const;

  double quad(const VectorXd& x) const { return x.dot(apply(x)); }

  /// Dense m x m realization, for tests and small-m oracles.
  MatrixXd dense() const;
};

/// Build the Q matrix; exact=true requires m1 >= 2 (and m2 >= 2 in Fisher
/// mode), since the exact block divides by mb - 1.
QMatrix build_q(BoostMode mode, int m1, int m2, bool exact, double delta = 1e-6);

}  // namespace tcboost
