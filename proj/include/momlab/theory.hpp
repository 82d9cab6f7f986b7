#pragma once

#include <cstdint>

namespace momlab::theory {

struct TheoryParams {
  double alpha = 1.0;    // tail index, or a lower bound on it
  double epsilon = 0.5;  // block-size exponent
  double delta = 0.01;   // failure probability
  std::uint64_t horizon_T = 10000;

  void validate() const;
};

// Bound on the median of m symmetric alpha-heavy-tail draws: 4^(1/alpha).
double median_bound(double alpha);

// 2 e^(-m/8), clamped to 1. The unclamped value exceeds 1 for m <= 5.
double lemma1_failure_prob(std::uint64_t m);
double lemma1_failure_prob_raw(std::uint64_t m);

// sqrt(2 * 4^(2/alpha) / n^(1-epsilon) * log(4/delta)), for 0 < delta < 4.
double mom_bound(double alpha, double epsilon, double n_tilde, double delta);

// Smallest C >= 1 with 2 C^(1-eps) exp(-C^eps / 16) <= 1, in log space.
double log_constant_C(double epsilon);
// exp(log_constant_C); throws std::overflow_error when not representable.
double constant_C(double epsilon);

struct SampleSize {
  double log_c_term;     // log C
  double log_tail_term;  // log (16 log(2T/delta))^(1/eps)
  double log_bound_term; // log (2 * 4^(2/alpha) log(4/delta))^(1/(1-eps))
  std::uint64_t n_tilde; // ceil of the largest term

  [[nodiscard]] double c_term() const;
  [[nodiscard]] double tail_term() const;
  [[nodiscard]] double bound_term() const;
};

// Per-logical-round sample count for the filtered bandit:
//   ceil(max{C, (16 log(2T/delta))^(1/eps), (2 * 4^(2/alpha) log(4/delta))^(1/(1-eps))}).
// With horizon_T = 1 the middle term reduces to the single-estimate threshold
// (16 log(2/delta))^(1/eps). Throws std::overflow_error past 2^63.
SampleSize sample_size_terms(const TheoryParams& params);
std::uint64_t required_sample_size(const TheoryParams& params);

// Block exponent that equalises the two data-dependent sample-size terms,
//   (16 log(2T/delta))^(1/eps) = (2 * 4^(2/alpha) log(4/delta))^(1/(1-eps)),
// solved in closed form: eps = log A / (log A + log B).
double optimal_epsilon(double alpha, double delta, std::uint64_t horizon_T);

// (1 - m) / (1 + m): block exponents below this beat the (1+m)-moment rate.
double comparison_rate_crossover(double moment_eps);

}  // namespace momlab::theory
