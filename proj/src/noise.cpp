#include "momlab/noise.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace momlab {

NoiseModel NoiseModel::gaussian(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("gaussian noise requires sigma > 0");
  }
  return NoiseModel(NoiseKind::gaussian, sigma);
}

NoiseModel NoiseModel::student_t(double df) {
  if (!(df > 0.0) || !std::isfinite(df)) {
    throw std::invalid_argument("student_t noise requires df > 0");
  }
  return NoiseModel(NoiseKind::student_t, df);
}

std::optional<double> NoiseModel::declared_alpha() const {
  if (kind_ == NoiseKind::student_t) return param_;
  return std::nullopt;
}

std::string NoiseModel::describe() const {
  std::ostringstream os;
  if (kind_ == NoiseKind::student_t) {
    os << "student_t(df=" << param_ << ")";
  } else {
    os << "gaussian(sigma=" << param_ << ")";
  }
  return os.str();
}

NoiseSampler::NoiseSampler(const NoiseModel& model)
    : model_(model),
      chi2_(model.kind() == NoiseKind::student_t ? model.df() / 2.0 : 1.0, 2.0) {}

double NoiseSampler::operator()(RngStream& rng) {
  auto& eng = rng.engine();
  if (model_.kind() == NoiseKind::gaussian) {
    return model_.sigma() * normal_(eng);
  }
  const double z = normal_(eng);
  double g = chi2_(eng);
  // For df well below 1 the chi-square draw can underflow to zero.
  while (!(g > 0.0)) g = chi2_(eng);
  return z / std::sqrt(g / model_.df());
}

void NoiseSampler::fill(RngStream& rng, std::span<double> out) {
  for (double& v : out) v = (*this)(rng);
}

double sample(const NoiseModel& model, RngStream& rng) {
  NoiseSampler sampler(model);
  return sampler(rng);
}

double tail_probability_empirical(const NoiseModel& model, double y, std::size_t n_samples,
                                  RngStream& rng) {
  if (!(y > 0.0)) throw std::invalid_argument("tail probability requires y > 0");
  if (n_samples == 0) throw std::invalid_argument("tail probability requires n_samples >= 1");
  NoiseSampler sampler(model);
  std::size_t exceed = 0;
  for (std::size_t i = 0; i < n_samples; ++i) {
    if (std::abs(sampler(rng)) > y) ++exceed;
  }
  return static_cast<double>(exceed) / static_cast<double>(n_samples);
}

std::vector<TailCheck> verify_alpha_heavy_tail(const NoiseModel& model, double alpha,
                                               std::span<const double> y_grid,
                                               std::size_t n_samples, RngStream& rng) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  if (y_grid.empty()) throw std::invalid_argument("y_grid must be nonempty");
  std::vector<TailCheck> rows;
  rows.reserve(y_grid.size());
  for (double y : y_grid) {
    if (!(y >= 1.0)) throw std::invalid_argument("y_grid values must be >= 1");
    const double p = tail_probability_empirical(model, y, n_samples, rng);
    const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(n_samples));
    const double bound = std::pow(y, -alpha);
    rows.push_back({y, p, se, bound, p <= bound + kTailSlackStdErrors * se});
  }
  return rows;
}

}  // namespace momlab
