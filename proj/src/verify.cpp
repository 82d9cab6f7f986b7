#include "momlab/verify.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "momlab/theory.hpp"

namespace momlab {
namespace {

double quantile(const NoiseModel& model, double p) {
  if (model.kind() == NoiseKind::student_t) {
    return boost::math::quantile(boost::math::students_t_distribution<double>(model.df()), p);
  }
  return model.sigma() * boost::math::quantile(boost::math::normal_distribution<double>(0.0, 1.0), p);
}

// Beta(a, b) as G_a / (G_a + G_b).
double draw_beta(double a, double b, RngStream& rng) {
  std::gamma_distribution<double> ga(a, 1.0);
  std::gamma_distribution<double> gb(b, 1.0);
  const double x = ga(rng.engine());
  const double y = gb(rng.engine());
  return x / (x + y);
}

double binomial_se(double p, std::size_t n) { return std::sqrt(p * (1.0 - p) / static_cast<double>(n)); }

}  // namespace

std::string_view to_string(MomSampling s) {
  return s == MomSampling::direct ? "direct" : "order_statistics";
}

std::vector<Lemma1Row> verify_lemma1(const NoiseModel& model, double alpha,
                                     std::span<const std::size_t> m_grid, std::size_t trials,
                                     RngStream& rng) {
  if (trials == 0) throw std::invalid_argument("verify_lemma1: trials must be >= 1");
  const double radius = theory::median_bound(alpha);
  NoiseSampler sampler(model);
  std::vector<Lemma1Row> rows;
  std::vector<double> buf;
  for (std::size_t m : m_grid) {
    if (m == 0) throw std::invalid_argument("verify_lemma1: m must be >= 1");
    buf.resize(m);
    std::size_t inside = 0;
    for (std::size_t t = 0; t < trials; ++t) {
      sampler.fill(rng, buf);
      if (std::abs(detail::median_inplace(std::span<double>(buf))) <= radius) ++inside;
    }
    const double coverage = static_cast<double>(inside) / static_cast<double>(trials);
    const double se = binomial_se(coverage, trials);
    const double fail = theory::lemma1_failure_prob_raw(m);
    const double bound = std::max(0.0, 1.0 - fail);
    rows.push_back({m, radius, bound, fail >= 1.0, coverage, se,
                    coverage >= bound - kCoverageSlackStdErrors * se});
  }
  return rows;
}

double draw_block_median(const NoiseModel& model, std::size_t k, RngStream& rng) {
  if (k == 0) throw std::invalid_argument("draw_block_median: k must be >= 1");
  const double kd = static_cast<double>(k);
  if (k % 2 == 1) {
    const double j = (kd + 1.0) / 2.0;
    return quantile(model, draw_beta(j, kd - j + 1.0, rng));
  }
  // Order statistics j = k/2 and j + 1. Given U_(j) = u, U_(j+1) is the
  // minimum of the k - j uniforms above u.
  const double j = kd / 2.0;
  const double lower = draw_beta(j, kd - j + 1.0, rng);
  double v = rng.uniform();
  while (!(v > 0.0)) v = rng.uniform();
  const double min_above = -std::expm1(std::log(v) / (kd - j));
  const double upper = lower + (1.0 - lower) * min_above;
  return (quantile(model, lower) + quantile(model, upper)) / 2.0;
}

double draw_mom(const NoiseModel& model, const BlockPlan& plan, RngStream& rng, MomSampling sampling,
                std::vector<double>& scratch) {
  if (sampling == MomSampling::direct) {
    NoiseSampler sampler(model);
    scratch.resize(plan.n_tilde);
    sampler.fill(rng, scratch);
    return mean_of_medians(std::span<const double>(scratch), plan);
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < plan.k_prime; ++j) sum += draw_block_median(model, plan.k, rng);
  return sum / static_cast<double>(plan.k_prime);
}

Theorem1Report verify_theorem1(const NoiseModel& model, double alpha, double epsilon, double delta,
                               std::size_t n_tilde, std::size_t trials, RngStream& rng,
                               MomSampling sampling) {
  if (trials < 2) throw std::invalid_argument("verify_theorem1: trials must be >= 2");
  Theorem1Report rep{};
  rep.plan = block_plan(n_tilde, epsilon);
  rep.alpha = alpha;
  rep.delta = delta;
  rep.bound = theory::mom_bound(alpha, epsilon, static_cast<double>(n_tilde), delta);
  rep.trials = trials;
  rep.sampling = sampling;

  std::vector<double> scratch;
  std::size_t inside = 0;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    const double x = draw_mom(model, rep.plan, rng, sampling, scratch);
    if (std::abs(x) <= rep.bound) ++inside;
    sum += x;
    sum_sq += x * x;
  }
  const double n = static_cast<double>(trials);
  rep.coverage = static_cast<double>(inside) / n;
  rep.coverage_se = binomial_se(rep.coverage, trials);
  rep.mean = sum / n;
  const double var = std::max(0.0, (sum_sq - n * rep.mean * rep.mean) / (n - 1.0));
  rep.mean_se = std::sqrt(var / n);
  rep.coverage_pass = rep.coverage >= 1.0 - delta - kCoverageSlackStdErrors * rep.coverage_se;
  rep.mean_pass = std::abs(rep.mean) <= kMeanSlackStdErrors * rep.mean_se;
  return rep;
}

}  // namespace momlab
