#include "tcboost/qmatrix.hpp"

#include <stdexcept>

namespace tcboost {

namespace {

// Exact block Q_b = (1/m) [(1 + beta) I - beta J] with beta = 1/(mb - 1):
// diagonal 1/m, off-diagonal -1/(m (mb - 1)).
void apply_exact_block(Eigen::Ref<VectorXd> out, const Eigen::Ref<const VectorXd>& x, int mb, int m) {
  const double beta = 1.0 / (mb - 1);
  const double block_sum = x.sum();
  out = ((1.0 + beta) * x.array() - beta * block_sum).matrix() / m;
}

// (Q_b + delta I)^{-1} = (1/alpha) I + (beta/m) / (alpha * delta) J,
// using alpha - mb * beta/m = delta (Sherman-Morrison).
void solve_exact_block(Eigen::Ref<VectorXd> out, const Eigen::Ref<const VectorXd>& x, int mb, int m, double delta) {
  const double beta = 1.0 / (mb - 1);
  const double alpha = (1.0 + beta) / m + delta;
  const double block_sum = x.sum();
  out = x / alpha + VectorXd::Constant(mb, (beta / m) / (alpha * delta) * block_sum);
}

}  // namespace

QMatrix build_q(BoostMode mode, int m1, int m2, bool exact, double delta) {
  if (m1 < 1 || m2 < 1) throw std::invalid_argument("build_q: need m1 >= 1 and m2 >= 1");
  if (exact) {
    if (m1 < 2) throw std::invalid_argument("build_q: exact Q1 needs m1 >= 2");
    if (mode == BoostMode::fisher && m2 < 2) throw std::invalid_argument("build_q: exact Fisher Q2 needs m2 >= 2");
  }
  if (delta <= 0) throw std::invalid_argument("build_q: delta must be positive");
  return QMatrix{mode, exact, m1, m2, delta};
}

VectorXd QMatrix::apply(const VectorXd& x) const {
  if (x.size() != m()) throw std::invalid_argument("QMatrix::apply: size mismatch");
  VectorXd out = VectorXd::Zero(m());
  if (exact) {
    apply_exact_block(out.head(m1), x.head(m1), m1, m());
    if (mode == BoostMode::fisher) apply_exact_block(out.tail(m2), x.tail(m2), m2, m());
  } else {
    out.head(m1) = x.head(m1) / m();
    if (mode == BoostMode::fisher) out.tail(m2) = x.tail(m2) / m();
  }
  return out;
}

VectorXd QMatrix::solve_regularized(const VectorXd& x) const {
  if (x.size() != m()) throw std::invalid_argument("QMatrix::solve_regularized: size mismatch");
  VectorXd out(m());
  if (exact) {
    solve_exact_block(out.head(m1), x.head(m1), m1, m(), delta);
    if (mode == BoostMode::fisher) {
      solve_exact_block(out.tail(m2), x.tail(m2), m2, m(), delta);
    } else {
      out.tail(m2) = x.tail(m2) / delta;
    }
  } else {
    out.head(m1) = x.head(m1) / (1.0 / m() + delta);
    if (mode == BoostMode::fisher) {
      out.tail(m2) = x.tail(m2) / (1.0 / m() + delta);
    } else {
      out.tail(m2) = x.tail(m2) / delta;
    }
  }
  return out;
}

MatrixXd QMatrix::dense() const {
  MatrixXd q = MatrixXd::Zero(m(), m());
  auto fill_block = [&](int offset, int mb) {
    if (exact) {
      const double off_diag = -1.0 / (static_cast<double>(m()) * (mb - 1));
      q.block(offset, offset, mb, mb).setConstant(off_diag);
    }
    for (int i = 0; i < mb; ++i) q(offset + i, offset + i) = 1.0 / m();
  };
  fill_block(0, m1);
  if (mode == BoostMode::fisher) fill_block(m1, m2);
  return q;
}

}  // namespace tcboost
