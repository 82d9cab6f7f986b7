#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "momlab/noise.hpp"

namespace momlab::testing {

// Brute-force references: full sort and the literal formulas, summing left to
// right exactly like the library so results can be compared with ==.

inline double ref_median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  if (n % 2 == 1) return v[n / 2];
  return (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

inline double ref_mean_of_medians(const std::vector<double>& x, double epsilon) {
  const std::size_t n = x.size();
  const auto k = static_cast<std::size_t>(std::ceil(std::pow(static_cast<double>(n), epsilon)));
  const std::size_t k_prime = n / k;
  double sum = 0.0;
  for (std::size_t j = 0; j < k_prime; ++j) {
    std::vector<double> block(x.begin() + static_cast<std::ptrdiff_t>(j * k),
                              x.begin() + static_cast<std::ptrdiff_t>((j + 1) * k));
    sum += ref_median(block);
  }
  return sum / static_cast<double>(k_prime);
}

inline double ref_truncated_mean(const std::vector<double>& x, double c) {
  double sum = 0.0;
  for (double v : x) sum += (std::abs(v) <= c) ? v : 0.0;
  return sum / static_cast<double>(x.size());
}

inline double ref_median_of_means(const std::vector<double>& x, std::size_t k, std::size_t k_prime) {
  std::vector<double> means;
  for (std::size_t j = 0; j < k_prime; ++j) {
    double s = 0.0;
    for (std::size_t i = j * k; i < (j + 1) * k; ++i) s += x[i];
    means.push_back(s / static_cast<double>(k));
  }
  return ref_median(means);
}

// Exact two-sided tail Pr(|eta| > y).
inline double exact_tail(const NoiseModel& model, double y) {
  if (model.kind() == NoiseKind::student_t) {
    return 2.0 * boost::math::cdf(boost::math::complement(
                     boost::math::students_t_distribution<double>(model.df()), y));
  }
  return 2.0 * boost::math::cdf(boost::math::complement(
                   boost::math::normal_distribution<double>(0.0, model.sigma()), y));
}

inline double sample_mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

inline double sample_sd(const std::vector<double>& v) {
  const double m = sample_mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

}  // namespace momlab::testing
