#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "momlab/rng.hpp"

namespace momlab {

enum class NoiseKind { gaussian, student_t };

// Symmetric, zero-centred noise family.
//
// student_t(df) has tail index df; student_t(1) is Cauchy. The Gaussian has
// tails lighter than any polynomial, so it declares no tail index.
class NoiseModel {
 public:
  static NoiseModel gaussian(double sigma);
  static NoiseModel student_t(double df);

  [[nodiscard]] NoiseKind kind() const noexcept { return kind_; }
  [[nodiscard]] double sigma() const noexcept { return param_; }
  [[nodiscard]] double df() const noexcept { return param_; }
  [[nodiscard]] std::optional<double> declared_alpha() const;
  [[nodiscard]] std::string describe() const;

  friend bool operator==(const NoiseModel&, const NoiseModel&) = default;

 private:
  NoiseModel(NoiseKind kind, double param) : kind_(kind), param_(param) {}

  NoiseKind kind_;
  double param_;
};

// Draws variates of one model from one stream.
//
// Student-t with arbitrary (fractional) df is generated as Z / sqrt(G / df),
// Z ~ N(0, 1), G ~ Gamma(shape = df / 2, scale = 2), i.e. G ~ chi^2(df).
class NoiseSampler {
 public:
  explicit NoiseSampler(const NoiseModel& model);

  double operator()(RngStream& rng);
  void fill(RngStream& rng, std::span<double> out);

  [[nodiscard]] const NoiseModel& model() const noexcept { return model_; }

 private:
  NoiseModel model_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::gamma_distribution<double> chi2_;
};

// One variate. Equivalent to a freshly constructed NoiseSampler, so repeated
// calls on one stream agree with each other but not with a long-lived sampler
// (the normal generator pairs draws).
double sample(const NoiseModel& model, RngStream& rng);

// Fraction of n_samples draws with |eta| > y.
double tail_probability_empirical(const NoiseModel& model, double y, std::size_t n_samples,
                                  RngStream& rng);

struct TailCheck {
  double y;
  double empirical;   // fraction of draws with |eta| > y
  double std_error;   // binomial standard error of `empirical`
  double bound;       // 1 / y^alpha
  bool pass;          // empirical <= bound + 3 * std_error
};

// Checks Pr(|eta| > y) <= y^-alpha on each grid point. Every grid point uses
// its own n_samples draws, taken consecutively from rng.
std::vector<TailCheck> verify_alpha_heavy_tail(const NoiseModel& model, double alpha,
                                               std::span<const double> y_grid,
                                               std::size_t n_samples, RngStream& rng);

inline constexpr double kTailSlackStdErrors = 3.0;

}  // namespace momlab
