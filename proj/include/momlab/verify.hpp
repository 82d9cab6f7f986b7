#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "momlab/estimators.hpp"
#include "momlab/noise.hpp"
#include "momlab/rng.hpp"

namespace momlab {

inline constexpr double kCoverageSlackStdErrors = 3.0;
inline constexpr double kMeanSlackStdErrors = 5.0;

struct Lemma1Row {
  std::size_t m;
  double radius;         // 4^(1/alpha)
  double bound;          // 1 - 2 e^(-m/8), floored at 0
  bool vacuous;          // 2 e^(-m/8) >= 1
  double coverage;       // empirical Pr(|median| <= radius)
  double std_error;
  bool pass;             // coverage >= bound - 3 std_error
};

// For each m, the median of m fresh draws is formed `trials` times.
std::vector<Lemma1Row> verify_lemma1(const NoiseModel& model, double alpha,
                                     std::span<const std::size_t> m_grid, std::size_t trials,
                                     RngStream& rng);

// How X_mom is drawn in verify_theorem1.
//   direct:           n_tilde noise draws, then mean_of_medians.
//   order_statistics: each block median is drawn from its exact sampling
//                     distribution, Q(U_(j)) for the middle uniform order
//                     statistic(s) of k, with Q the noise quantile function.
//                     Same law as `direct` at O(k') instead of O(n_tilde) cost.
enum class MomSampling { direct, order_statistics };

std::string_view to_string(MomSampling s);

struct Theorem1Report {
  BlockPlan plan;
  double alpha;
  double delta;
  double bound;          // mom_bound(alpha, epsilon, n_tilde, delta)
  std::size_t trials;
  MomSampling sampling;
  double coverage;       // empirical Pr(|X_mom| <= bound)
  double coverage_se;
  double mean;           // empirical mean of X_mom
  double mean_se;        // sample sd / sqrt(trials)
  bool coverage_pass;    // coverage >= 1 - delta - 3 coverage_se
  bool mean_pass;        // |mean| <= 5 mean_se

  [[nodiscard]] bool pass() const { return coverage_pass && mean_pass; }
};

Theorem1Report verify_theorem1(const NoiseModel& model, double alpha, double epsilon, double delta,
                               std::size_t n_tilde, std::size_t trials, RngStream& rng,
                               MomSampling sampling = MomSampling::direct);

// One draw of X_mom for zero-location noise.
double draw_mom(const NoiseModel& model, const BlockPlan& plan, RngStream& rng, MomSampling sampling,
                std::vector<double>& scratch);

// Median of k i.i.d. draws via uniform order statistics (see MomSampling).
double draw_block_median(const NoiseModel& model, std::size_t k, RngStream& rng);

}  // namespace momlab
