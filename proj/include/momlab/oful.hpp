#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>

namespace momlab {

struct AlgorithmConfig {
  double ridge_lambda = 1.0;
  // Assumed bound on the second moment of the reward noise the base algorithm
  // sees; scales the confidence radius.
  double sub_gauss_proxy_v = 1.0;
  double delta = 0.01;
  std::size_t horizon_logical = 0;  // informational; the radius is anytime
  double arm_norm_bound = 1.0;      // L
  double param_norm_bound = 1.0;    // S

  void validate() const {
    if (!(ridge_lambda > 0.0)) throw std::invalid_argument("ridge_lambda must be positive");
    if (!(sub_gauss_proxy_v > 0.0)) throw std::invalid_argument("v must be positive");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
    if (!(arm_norm_bound > 0.0) || !(param_norm_bound > 0.0)) {
      throw std::invalid_argument("norm bounds must be positive");
    }
  }
};

// Ridge-regression statistics of the optimistic linear bandit.
//   gram      = lambda I + sum x x^T
//   moment    = sum x r
//   theta_hat = gram^-1 moment
template <typename Scalar = double>
struct OfulState {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  Matrix gram;
  Vector moment_vec;
  Vector theta_hat;
  std::size_t round = 0;
  Eigen::LLT<Matrix> factor;

  OfulState(Eigen::Index d, Scalar lambda)
      : gram(Matrix::Identity(d, d) * lambda),
        moment_vec(Vector::Zero(d)),
        theta_hat(Vector::Zero(d)),
        factor(gram) {
    if (d < 1) throw std::invalid_argument("OfulState: dimension must be >= 1");
    if (!(lambda > 0)) throw std::invalid_argument("OfulState: lambda must be positive");
  }

  [[nodiscard]] Eigen::Index dimension() const { return theta_hat.size(); }
};

using OfulStateD = OfulState<double>;

// beta_t = sqrt(v) sqrt(d log((1 + t L^2 / lambda) / delta)) + sqrt(lambda) S,
// t = number of updates so far.
template <typename Scalar>
Scalar confidence_radius(const OfulState<Scalar>& state, const AlgorithmConfig& cfg) {
  const Scalar d = static_cast<Scalar>(state.dimension());
  const Scalar t = static_cast<Scalar>(state.round);
  const Scalar L2 = static_cast<Scalar>(cfg.arm_norm_bound * cfg.arm_norm_bound);
  const Scalar lambda = static_cast<Scalar>(cfg.ridge_lambda);
  const Scalar log_term = std::log((Scalar(1) + t * L2 / lambda) / static_cast<Scalar>(cfg.delta));
  return std::sqrt(static_cast<Scalar>(cfg.sub_gauss_proxy_v)) * std::sqrt(d * log_term) +
         std::sqrt(lambda) * static_cast<Scalar>(cfg.param_norm_bound);
}

// argmax_a theta_hat^T x_a + beta_t ||x_a||_{gram^-1}; arms are the columns.
// Ties go to the lowest index.
template <typename Scalar, typename Derived>
Eigen::Index oful_select(const OfulState<Scalar>& state, const Eigen::MatrixBase<Derived>& arms,
                         const AlgorithmConfig& cfg) {
  if (arms.cols() == 0) throw std::invalid_argument("oful_select: empty arm set");
  if (arms.rows() != state.dimension()) {
    throw std::invalid_argument("oful_select: arm dimension mismatch");
  }
  const Scalar beta = confidence_radius(state, cfg);
  const typename OfulState<Scalar>::Matrix solved = state.factor.solve(arms);
  Eigen::Index best = 0;
  Scalar best_ucb = -std::numeric_limits<Scalar>::infinity();
  for (Eigen::Index a = 0; a < arms.cols(); ++a) {
    const Scalar width = std::sqrt(std::max(Scalar(0), arms.col(a).dot(solved.col(a))));
    const Scalar ucb = state.theta_hat.dot(arms.col(a)) + beta * width;
    if (ucb > best_ucb) {
      best_ucb = ucb;
      best = a;
    }
  }
  return best;
}

template <typename Scalar, typename Derived>
void oful_update(OfulState<Scalar>& state, const Eigen::MatrixBase<Derived>& x, Scalar reward) {
  if (!std::isfinite(reward)) throw std::invalid_argument("oful_update: non-finite reward");
  if (x.size() != state.dimension()) throw std::invalid_argument("oful_update: dimension mismatch");
  state.gram.noalias() += x * x.transpose();
  state.moment_vec.noalias() += x * reward;
  state.factor.compute(state.gram);
  if (state.factor.info() != Eigen::Success) {
    throw std::runtime_error("oful_update: gram matrix lost positive definiteness");
  }
  state.theta_hat = state.factor.solve(state.moment_vec);
  ++state.round;
}

}  // namespace momlab
