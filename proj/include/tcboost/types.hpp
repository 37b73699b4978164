#pragma once

#include <Eigen/Dense>

#include <cstdint>

namespace tcboost {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using VectorXd = Vector<double>;
using MatrixXd = Matrix<double>;
using VectorXi = Vector<int>;

using Index = Eigen::Index;

/// sign with sign(0) = +1, used uniformly by every classifier in the toolkit.
inline int sign_pm1(double v) { return v >= 0.0 ? +1 : -1; }

}  // namespace tcboost
