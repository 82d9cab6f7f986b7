#include "momlab/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace momlab::theory {
namespace {

void require_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("alpha must be positive");
}
void require_unit_open(double x, const char* name) {
  if (!(x > 0.0 && x < 1.0)) throw std::invalid_argument(std::string(name) + " must lie in (0, 1)");
}

const double kLog4 = std::log(4.0);

// log of 2 C^(1-eps) exp(-C^eps / 16) as a function of u = log C.
double log_c_condition(double u, double epsilon) {
  return std::log(2.0) + (1.0 - epsilon) * u - std::exp(epsilon * u) / 16.0;
}

double exp_checked(double log_value) {
  if (log_value > std::log(std::numeric_limits<double>::max())) {
    throw std::overflow_error("value not representable as double");
  }
  return std::exp(log_value);
}

}  // namespace

void TheoryParams::validate() const {
  require_alpha(alpha);
  require_unit_open(epsilon, "epsilon");
  require_unit_open(delta, "delta");
  if (horizon_T == 0) throw std::invalid_argument("horizon_T must be >= 1");
}

double median_bound(double alpha) {
  require_alpha(alpha);
  return std::pow(4.0, 1.0 / alpha);
}

double lemma1_failure_prob_raw(std::uint64_t m) {
  return 2.0 * std::exp(-static_cast<double>(m) / 8.0);
}

double lemma1_failure_prob(std::uint64_t m) { return std::min(1.0, lemma1_failure_prob_raw(m)); }

double mom_bound(double alpha, double epsilon, double n_tilde, double delta) {
  require_alpha(alpha);
  require_unit_open(epsilon, "epsilon");
  // Any delta with log(4 / delta) > 0 gives a real bound.
  if (!(delta > 0.0 && delta < 4.0)) throw std::invalid_argument("delta must lie in (0, 4)");
  if (!(n_tilde >= 1.0)) throw std::invalid_argument("n_tilde must be >= 1");
  const double scale = 2.0 * std::pow(4.0, 2.0 / alpha) / std::pow(n_tilde, 1.0 - epsilon);
  return std::sqrt(scale * std::log(4.0 / delta));
}

double log_constant_C(double epsilon) {
  require_unit_open(epsilon, "epsilon");
  // The condition is positive at C = 1, rises to a single peak at
  // C^eps = 16 (1 - eps) / eps and then falls to -inf, so its zero set on
  // [1, inf) is a half line. Start past the peak and double until it holds.
  double lo = std::max(0.0, std::log(16.0 * (1.0 - epsilon) / epsilon) / epsilon);
  double hi = lo + 1.0;
  while (log_c_condition(hi, epsilon) > 0.0) {
    lo = hi;
    hi *= 2.0;
  }
  // Bisection on log C; 1e-12 absolute in log C is far below 1e-6 relative in C.
  while (hi - lo > 1e-12 * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    if (log_c_condition(mid, epsilon) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

double constant_C(double epsilon) { return exp_checked(log_constant_C(epsilon)); }

double SampleSize::c_term() const { return exp_checked(log_c_term); }
double SampleSize::tail_term() const { return exp_checked(log_tail_term); }
double SampleSize::bound_term() const { return exp_checked(log_bound_term); }

SampleSize sample_size_terms(const TheoryParams& params) {
  params.validate();
  const double T = static_cast<double>(params.horizon_T);
  SampleSize out{};
  out.log_c_term = log_constant_C(params.epsilon);
  out.log_tail_term = std::log(16.0 * std::log(2.0 * T / params.delta)) / params.epsilon;
  const double log_bound_base =
      std::log(2.0) + (2.0 / params.alpha) * kLog4 + std::log(std::log(4.0 / params.delta));
  out.log_bound_term = log_bound_base / (1.0 - params.epsilon);

  const double log_max = std::max({out.log_c_term, out.log_tail_term, out.log_bound_term});
  if (log_max >= 63.0 * std::log(2.0)) {
    throw std::overflow_error("required sample size exceeds 2^63");
  }
  // Re-evaluate the winning term directly rather than through exp(log(.)).
  double value = 0.0;
  if (log_max == out.log_tail_term) {
    value = std::pow(16.0 * std::log(2.0 * T / params.delta), 1.0 / params.epsilon);
  } else if (log_max == out.log_bound_term) {
    value = std::pow(2.0 * std::pow(4.0, 2.0 / params.alpha) * std::log(4.0 / params.delta),
                     1.0 / (1.0 - params.epsilon));
  } else {
    value = std::exp(out.log_c_term);
  }
  out.n_tilde = static_cast<std::uint64_t>(std::ceil(value));
  return out;
}

std::uint64_t required_sample_size(const TheoryParams& params) {
  return sample_size_terms(params).n_tilde;
}

double optimal_epsilon(double alpha, double delta, std::uint64_t horizon_T) {
  require_alpha(alpha);
  require_unit_open(delta, "delta");
  if (horizon_T == 0) throw std::invalid_argument("horizon_T must be >= 1");
  const double log_a = std::log(16.0 * std::log(2.0 * static_cast<double>(horizon_T) / delta));
  const double log_b = std::log(2.0 * std::pow(4.0, 2.0 / alpha) * std::log(4.0 / delta));
  if (!(log_a > 0.0) || !(log_b > 0.0)) {
    throw std::domain_error("optimal_epsilon: both sample-size bases must exceed 1");
  }
  return log_a / (log_a + log_b);
}

double comparison_rate_crossover(double moment_eps) {
  require_unit_open(moment_eps, "moment epsilon");
  return (1.0 - moment_eps) / (1.0 + moment_eps);
}

}  // namespace momlab::theory
