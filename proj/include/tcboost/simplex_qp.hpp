#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "tcboost/types.hpp"

namespace tcboost {

/// Quadratic objective over the unit simplex: f(w) = 1/2 w'Pw - c'w,
/// w >= 0, 1'w = 1. P symmetric positive semidefinite.
template <typename Scalar>
struct SimplexQpT {
  Matrix<Scalar> P;
  Vector<Scalar> c;

  Index n() const { return c.size(); }
  Scalar value(const Vector<Scalar>& w) const { return Scalar(0.5) * w.dot(P * w) - c.dot(w); }
  Vector<Scalar> gradient(const Vector<Scalar>& w) const { return P * w - c; }
};

using SimplexQp = SimplexQpT<double>;

/// Upper bound on the sup of the gradient's max-magnitude component over the
/// simplex: max |P_ij| + max |c_j|. Each (Pw)_j is a convex combination of
/// row entries, so the bound dominates every gradient component.
template <typename Scalar>
Scalar lipschitz_estimate(const SimplexQpT<Scalar>& qp) {
  if (qp.n() == 0) throw std::invalid_argument("lipschitz_estimate: empty problem");
  const Scalar p_max = qp.P.size() > 0 ? qp.P.cwiseAbs().maxCoeff() : Scalar(0);
  return p_max + qp.c.cwiseAbs().maxCoeff();
}

/// Euclidean projection onto the unit simplex (sort-and-threshold).
template <typename Scalar>
Vector<Scalar> project_to_simplex(const Vector<Scalar>& v) {
  const Index n = v.size();
  std::vector<Scalar> u(v.data(), v.data() + n);
  std::sort(u.begin(), u.end(), std::greater<Scalar>());
  Scalar cumulative = 0;
  Scalar tau = 0;
  for (Index j = 0; j < n; ++j) {
    cumulative += u[static_cast<std::size_t>(j)];
    const Scalar candidate = (cumulative - Scalar(1)) / Scalar(j + 1);
    if (u[static_cast<std::size_t>(j)] - candidate > Scalar(0)) tau = candidate;
  }
  return (v.array() - tau).max(Scalar(0)).matrix();
}

struct EgOptions {
  double tolerance = 1e-7;     // best-iterate improvement threshold
  int plateau_window = 50;     // iterations per improvement check
  int max_iters = 10000;
  double step_multiplier = 1.0;
};

template <typename Scalar>
struct EgResultT {
  Vector<Scalar> w;
  Scalar f = 0;
  int iterations = 0;
  bool converged = false;
};

using EgResult = EgResultT<double>;

/// Entropic (exponentiated) gradient descent over the unit simplex.
///
/// Multiplicative update w_j <- w_j exp(-tau_k g_j) / Z with the step
/// schedule tau_k = sqrt(2 log n) / L_f * k^{-1/2}. Returns the best iterate
/// seen (mirror-descent iterates need not be monotone). Stops when the best
/// objective improves by less than `tolerance` over a window of
/// `plateau_window` iterations, or at `max_iters`.
///
/// `init`, when given, must be strictly interior. `incumbent`, when given,
/// is an extra feasible point folded into best-iterate tracking; column
/// generation passes the previous solution embedded with a zero weight on
/// the new column, which makes the reported primal objective non-increasing
/// across iterations.
template <typename Scalar>
using IterateObserver = std::function<void(const Vector<Scalar>&, Scalar)>;

template <typename Scalar>
EgResultT<Scalar> eg_solve(const SimplexQpT<Scalar>& qp, const EgOptions& opts = {},
                           const std::optional<Vector<std::type_identity_t<Scalar>>>& init = std::nullopt,
                           const std::optional<Vector<std::type_identity_t<Scalar>>>& incumbent = std::nullopt,
                           const IterateObserver<std::type_identity_t<Scalar>>* on_iterate = nullptr) {
  const Index n = qp.n();
  if (n == 0) throw std::invalid_argument("eg_solve: empty problem");

  Vector<Scalar> w;
  if (init) {
    if (init->size() != n) throw std::invalid_argument("eg_solve: init size mismatch");
    if ((init->array() <= Scalar(0)).any()) throw std::invalid_argument("eg_solve: init must be strictly interior");
    w = *init;
    w /= w.sum();
  } else {
    w = Vector<Scalar>::Constant(n, Scalar(1) / Scalar(n));
  }

  EgResultT<Scalar> result;
  result.w = w;
  result.f = qp.value(w);
  if (incumbent) {
    const Scalar f_inc = qp.value(*incumbent);
    if (f_inc < result.f) {
      result.w = *incumbent;
      result.f = f_inc;
    }
  }

  const Scalar lipschitz = lipschitz_estimate(qp);
  if (n == 1 || lipschitz == Scalar(0)) {
    result.converged = true;
    return result;
  }
  const Scalar tau0 =
      std::sqrt(Scalar(2) * std::log(static_cast<Scalar>(n))) / lipschitz * static_cast<Scalar>(opts.step_multiplier);

  // Log-space state: w is the softmax of log_w throughout, which keeps the
  // multiplicative update stable when weights get very small.
  Vector<Scalar> log_w = w.array().log().matrix();
  Scalar window_best = result.f;
  for (int k = 1; k <= opts.max_iters; ++k) {
    const Vector<Scalar> grad = qp.gradient(w);
    if (!grad.allFinite()) throw std::runtime_error("eg_solve: non-finite gradient");
    // w'Pw = w'(g + c), so f is available from the gradient already computed.
    const Scalar f = Scalar(0.5) * (w.dot(grad) - qp.c.dot(w));
    if (on_iterate) (*on_iterate)(w, f);
    if (f < result.f) {
      result.f = f;
      result.w = w;
    }
    result.iterations = k;
    if (k % opts.plateau_window == 0) {
      if (window_best - result.f < static_cast<Scalar>(opts.tolerance)) {
        result.converged = true;
        break;
      }
      window_best = result.f;
    }

    const Scalar tau = tau0 / std::sqrt(static_cast<Scalar>(k));
    log_w -= tau * grad;
    log_w.array() -= log_w.maxCoeff();
    w = log_w.array().exp().matrix();
    w /= w.sum();
  }
  const Scalar f_last = qp.value(w);
  if (f_last < result.f) {
    result.f = f_last;
    result.w = w;
  }

  // Support snap: multiplicative updates leave exponentially decaying mass
  // on inactive coordinates, which barely moves f but inflates the measured
  // complementarity. Zeroing sub-floor weights and renormalizing is a
  // feasible move; adopt it only when it strictly improves the objective.
  const Scalar top = result.w.maxCoeff();
  for (const Scalar floor : {Scalar(1e-3), Scalar(1e-4), Scalar(1e-5), Scalar(1e-6)}) {
    Vector<Scalar> snapped = result.w;
    for (Index j = 0; j < n; ++j) {
      if (snapped[j] < floor * top) snapped[j] = Scalar(0);
    }
    snapped /= snapped.sum();
    const Scalar f_snapped = qp.value(snapped);
    if (f_snapped < result.f) {
      result.f = f_snapped;
      result.w = snapped;
    }
  }
  return result;
}

struct ReferenceOptions {
  double stationarity_tol = 1e-9;  // on ||w - proj(w - grad/L)||_inf
  int max_iters = 200000;
};

template <typename Scalar>
struct ReferenceResultT {
  Vector<Scalar> w;
  Scalar f = 0;
  int iterations = 0;
  bool converged = false;
};

using ReferenceResult = ReferenceResultT<double>;

namespace detail {

/// Largest eigenvalue of a symmetric PSD matrix by power iteration.
template <typename Scalar>
Scalar spectral_upper_bound(const Matrix<Scalar>& P) {
  const Index n = P.rows();
  Vector<Scalar> v = Vector<Scalar>::Ones(n);
  // Deterministic perturbation so v is not orthogonal to the top eigenvector.
  for (Index i = 0; i < n; ++i) v[i] += Scalar(i % 7) / Scalar(8);
  v.normalize();
  Scalar lambda = 0;
  for (int it = 0; it < 200; ++it) {
    Vector<Scalar> pv = P * v;
    const Scalar norm = pv.norm();
    if (norm == Scalar(0)) return Scalar(0);
    lambda = v.dot(pv);
    v = pv / norm;
  }
  return std::abs(lambda) * Scalar(1.02);
}

}  // namespace detail

/// Dense reference solver for the same problem: accelerated projected
/// gradient with exact simplex projection and monotone safeguarding, run to
/// a projected-gradient stationarity tolerance. Serves as the ground-truth
/// oracle for eg_solve on small and medium instances (n <= 2000).
template <typename Scalar>
ReferenceResultT<Scalar> reference_solve(const SimplexQpT<Scalar>& qp, const ReferenceOptions& opts = {}) {
  const Index n = qp.n();
  if (n == 0) throw std::invalid_argument("reference_solve: empty problem");
  if (n > 2000) throw std::invalid_argument("reference_solve: dense method limited to n <= 2000");

  ReferenceResultT<Scalar> result;
  if (n == 1) {
    result.w = Vector<Scalar>::Ones(1);
    result.f = qp.value(result.w);
    result.converged = true;
    return result;
  }

  const Scalar lambda_max = detail::spectral_upper_bound<Scalar>(qp.P);
  const Scalar grad_scale = std::max(Scalar(1), qp.c.cwiseAbs().maxCoeff());
  const Scalar L = std::max(lambda_max, Scalar(1e-8) * grad_scale);
  if (lambda_max == Scalar(0) && qp.c.cwiseAbs().maxCoeff() == Scalar(0)) {
    result.w = Vector<Scalar>::Constant(n, Scalar(1) / Scalar(n));
    result.f = 0;
    result.converged = true;
    return result;
  }

  Vector<Scalar> x = Vector<Scalar>::Constant(n, Scalar(1) / Scalar(n));
  Vector<Scalar> y = x;
  Scalar f_x = qp.value(x);
  Scalar momentum = 1;
  result.w = x;
  result.f = f_x;

  for (int k = 1; k <= opts.max_iters; ++k) {
    Vector<Scalar> x_next = project_to_simplex<Scalar>(y - qp.gradient(y) / L);
    Scalar f_next = qp.value(x_next);
    if (f_next > f_x) {
      // Momentum overshot; fall back to a plain projected-gradient step.
      x_next = project_to_simplex<Scalar>(x - qp.gradient(x) / L);
      f_next = qp.value(x_next);
      momentum = 1;
    }
    const Scalar momentum_next = (Scalar(1) + std::sqrt(Scalar(1) + Scalar(4) * momentum * momentum)) / Scalar(2);
    y = x_next + ((momentum - Scalar(1)) / momentum_next) * (x_next - x);
    momentum = momentum_next;

    result.iterations = k;
    if (f_next < result.f) {
      result.f = f_next;
      result.w = x_next;
    }

    const Scalar residual = (x_next - project_to_simplex<Scalar>(x_next - qp.gradient(x_next) / L)).template lpNorm<Eigen::Infinity>();
    x = x_next;
    f_x = f_next;
    if (residual <= static_cast<Scalar>(opts.stationarity_tol)) {
      result.converged = true;
      break;
    }
  }
  return result;
}

/// Column-generation warm start: append mass eps_w for the new coordinate to
/// the previous solution and rescale onto the simplex. Zero components are
/// lifted to the smallest positive double so the result is strictly interior.
template <typename Scalar>
Vector<Scalar> warm_start(const Vector<Scalar>& previous_w, Scalar eps_w = Scalar(1e-2)) {
  Vector<Scalar> out(previous_w.size() + 1);
  out.head(previous_w.size()) = previous_w;
  out[previous_w.size()] = eps_w;
  for (Index i = 0; i < out.size(); ++i) {
    if (out[i] <= Scalar(0)) out[i] = std::numeric_limits<Scalar>::min();
  }
  out /= out.sum();
  return out;
}

}  // namespace tcboost
