#pragma once

// Reward filtering around a base bandit algorithm: every logical round the
// base algorithm picks one arm, the environment is pulled n_tilde times on
// it, and a robust estimate of those rewards is what the base algorithm sees.

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "momlab/bandit_env.hpp"
#include "momlab/estimators.hpp"
#include "momlab/oful.hpp"
#include "momlab/rng.hpp"

namespace momlab {

enum class FilterKind { raw, mean_of_medians, truncated_mean, median_of_means };

std::string_view to_string(FilterKind kind);

struct FilterConfig {
  FilterKind kind = FilterKind::raw;
  std::size_t n_tilde = 1;
  BlockPlan plan{};            // mean_of_medians, median_of_means (k, k' only)
  double truncation_c = 10.0;  // truncated_mean

  static FilterConfig raw() { return {FilterKind::raw, 1, {1, 0.5, 1, 1}, 10.0}; }
  static FilterConfig mean_of_medians(std::size_t n_tilde, double epsilon) {
    return {FilterKind::mean_of_medians, n_tilde, block_plan(n_tilde, epsilon), 10.0};
  }
  static FilterConfig truncated_mean(std::size_t n_tilde, double c) {
    if (n_tilde == 0) throw std::invalid_argument("truncated filter: n_tilde must be >= 1");
    if (!(c > 0.0)) throw std::invalid_argument("truncated filter: c must be positive");
    return {FilterKind::truncated_mean, n_tilde, {n_tilde, 0.5, n_tilde, 1}, c};
  }
  static FilterConfig median_of_means(std::size_t n_tilde, std::size_t k, std::size_t k_prime) {
    if (k == 0 || k_prime == 0 || k * k_prime > n_tilde) {
      throw std::invalid_argument("median-of-means filter: need 1 <= k * k' <= n_tilde");
    }
    return {FilterKind::median_of_means, n_tilde, {n_tilde, 0.5, k, k_prime}, 10.0};
  }

  void validate() const;
};

// Maps the n_tilde rewards of one logical round to the scalar fed back.
using Estimator = std::function<double(std::span<const double>)>;

Estimator make_estimator(const FilterConfig& cfg);

enum class ArmMode { fixed, per_round };

struct PullBudget {
  std::size_t remaining = 0;
};

struct RunTrace {
  std::size_t n_tilde = 1;
  std::size_t logical_rounds = 0;
  std::vector<PullRecord> pulls;
  std::vector<double> estimation_error;  // after each logical round's update

  [[nodiscard]] double final_regret() const { return pulls.empty() ? 0.0 : pulls.back().cumulative_regret; }
};

template <typename Scalar>
double relative_estimation_error(const OfulState<Scalar>& state, const BanditInstance<Scalar>& env) {
  return static_cast<double>((state.theta_hat - env.theta_star).norm() / env.theta_star.norm());
}

// One logical round. The base algorithm never sees anything but the value
// returned by `estimator`; the wrapper only counts pulls.
template <typename Scalar>
Eigen::Index filtered_round(OfulState<Scalar>& state, const BanditInstance<Scalar>& env,
                            const AlgorithmConfig& alg, const FilterConfig& filter,
                            const Estimator& estimator, NoiseSampler& noise, RngStream& noise_rng,
                            RegretTracker& tracker, PullBudget& budget,
                            std::vector<double>& scratch) {
  if (budget.remaining < filter.n_tilde) throw std::runtime_error("filtered_round: budget exhausted");
  const Eigen::Index arm = oful_select(state, env.arms, alg);
  scratch.resize(filter.n_tilde);
  for (std::size_t i = 0; i < filter.n_tilde; ++i) {
    scratch[i] = static_cast<double>(pull(env, arm, noise, noise_rng));
    tracker.record(env, arm);
  }
  budget.remaining -= filter.n_tilde;
  const double filtered = estimator(std::span<const double>(scratch));
  oful_update(state, env.arms.col(arm), static_cast<Scalar>(filtered));
  return arm;
}

template <typename Scalar>
Eigen::Index filtered_round(OfulState<Scalar>& state, const BanditInstance<Scalar>& env,
                            const AlgorithmConfig& alg, const FilterConfig& filter,
                            NoiseSampler& noise, RngStream& noise_rng, RegretTracker& tracker,
                            PullBudget& budget) {
  std::vector<double> scratch;
  return filtered_round(state, env, alg, filter, make_estimator(filter), noise, noise_rng, tracker,
                        budget, scratch);
}

// A whole path of floor(T / n_tilde) logical rounds on a private copy of `env`.
//
// Noise comes from rng.derive(stream_tag::noise) and, in per_round mode, the
// arm set is redrawn from rng.derive(stream_tag::arms) before every logical
// round. Algorithms run on the same (env, rng) therefore see the same noise
// value at the same physical pull index.
template <typename Scalar>
RunTrace run_path(BanditInstance<Scalar> env, const AlgorithmConfig& alg, const FilterConfig& filter,
                  const Estimator& estimator, std::size_t horizon_T, const RngStream& rng,
                  ArmMode arm_mode = ArmMode::fixed) {
  alg.validate();
  filter.validate();
  if (horizon_T < filter.n_tilde) throw std::invalid_argument("run_path: horizon shorter than n_tilde");
  RunTrace trace;
  trace.n_tilde = filter.n_tilde;
  trace.logical_rounds = horizon_T / filter.n_tilde;

  RngStream noise_rng = rng.derive(stream_tag::noise);
  RngStream arm_rng = rng.derive(stream_tag::arms);
  NoiseSampler noise(env.noise);
  OfulState<Scalar> state(env.dimension(), static_cast<Scalar>(alg.ridge_lambda));
  RegretTracker tracker;
  tracker.reserve(trace.logical_rounds * filter.n_tilde);
  PullBudget budget{trace.logical_rounds * filter.n_tilde};
  std::vector<double> scratch;
  trace.estimation_error.reserve(trace.logical_rounds);

  for (std::size_t r = 0; r < trace.logical_rounds; ++r) {
    if (arm_mode == ArmMode::per_round) redraw_arms(env, arm_rng);
    filtered_round(state, env, alg, filter, estimator, noise, noise_rng, tracker, budget, scratch);
    trace.estimation_error.push_back(relative_estimation_error(state, env));
  }
  trace.pulls = tracker.log();
  return trace;
}

template <typename Scalar>
RunTrace run_path(BanditInstance<Scalar> env, const AlgorithmConfig& alg, const FilterConfig& filter,
                  std::size_t horizon_T, const RngStream& rng, ArmMode arm_mode = ArmMode::fixed) {
  return run_path(std::move(env), alg, filter, make_estimator(filter), horizon_T, rng, arm_mode);
}

}  // namespace momlab
