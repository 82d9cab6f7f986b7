#pragma once

// Robust location estimators over a batch of rewards.
//
// All estimators take the batch in pull order and are pure. Sums run left to
// right over the stated index range and are divided once at the end; the
// tests compare against literal formula evaluation bit for bit, so keep that
// order if touching the arithmetic.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace momlab {

// Block geometry of the mean-of-medians estimator:
//   k  = ceil(n_tilde^epsilon)   samples per block
//   k' = floor(n_tilde / k)      number of blocks
// The trailing n_tilde - k * k' samples are not used.
struct BlockPlan {
  std::size_t n_tilde = 0;
  double epsilon = 0.0;
  std::size_t k = 0;
  std::size_t k_prime = 0;

  [[nodiscard]] std::size_t used() const noexcept { return k * k_prime; }
  [[nodiscard]] std::size_t discarded() const noexcept { return n_tilde - used(); }

  friend bool operator==(const BlockPlan&, const BlockPlan&) = default;
};

inline BlockPlan block_plan(std::size_t n_tilde, double epsilon) {
  if (n_tilde == 0) throw std::invalid_argument("block_plan: n_tilde must be >= 1");
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("block_plan: epsilon must lie in (0, 1)");
  }
  double root = std::pow(static_cast<double>(n_tilde), epsilon);
  // pow may land one ulp above an exact integer power (e.g. 10000^0.5).
  const double nearest = std::round(root);
  if (std::abs(root - nearest) <= 1e-12 * nearest) root = nearest;
  const auto k = static_cast<std::size_t>(std::ceil(root));
  const std::size_t k_prime = n_tilde / k;
  if (k_prime == 0) throw std::invalid_argument("block_plan: block size exceeds n_tilde");
  return {n_tilde, epsilon, k, k_prime};
}

namespace detail {

template <std::floating_point Scalar>
void require_finite(std::span<const Scalar> values, const char* who) {
  for (Scalar v : values) {
    if (!std::isfinite(v)) throw std::invalid_argument(std::string(who) + ": non-finite value");
  }
}

// Median of a scratch buffer; reorders it. Even length gives the midpoint of
// the two middle order statistics.
template <std::floating_point Scalar>
Scalar median_inplace(std::span<Scalar> buf) {
  const std::size_t n = buf.size();
  const std::size_t mid = n / 2;
  std::nth_element(buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(mid), buf.end());
  const Scalar upper = buf[mid];
  if (n % 2 == 1) return upper;
  const Scalar lower = *std::max_element(buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(mid));
  return (lower + upper) / Scalar(2);
}

}  // namespace detail

template <std::floating_point Scalar>
Scalar median(std::span<const Scalar> values) {
  if (values.empty()) throw std::invalid_argument("median: empty input");
  detail::require_finite(values, "median");
  std::vector<Scalar> buf(values.begin(), values.end());
  return detail::median_inplace(std::span<Scalar>(buf));
}

template <std::floating_point Scalar>
Scalar median(const std::vector<Scalar>& values) {
  return median(std::span<const Scalar>(values));
}

// (1/k') * sum_j median(block j), blocks consecutive in pull order.
template <std::floating_point Scalar>
Scalar mean_of_medians(std::span<const Scalar> values, const BlockPlan& plan) {
  if (values.size() != plan.n_tilde) {
    throw std::invalid_argument("mean_of_medians: batch length does not match plan n_tilde");
  }
  if (plan.k == 0 || plan.k_prime == 0 || plan.used() > plan.n_tilde) {
    throw std::invalid_argument("mean_of_medians: malformed block plan");
  }
  detail::require_finite(values.first(plan.used()), "mean_of_medians");
  std::vector<Scalar> block(plan.k);
  Scalar sum = 0;
  for (std::size_t j = 0; j < plan.k_prime; ++j) {
    const auto first = values.begin() + static_cast<std::ptrdiff_t>(j * plan.k);
    std::copy(first, first + static_cast<std::ptrdiff_t>(plan.k), block.begin());
    sum += detail::median_inplace(std::span<Scalar>(block));
  }
  return sum / static_cast<Scalar>(plan.k_prime);
}

template <std::floating_point Scalar>
Scalar mean_of_medians(const std::vector<Scalar>& values, const BlockPlan& plan) {
  return mean_of_medians(std::span<const Scalar>(values), plan);
}

// (1/n) * sum_i x_i * 1{|x_i| <= c}. Truncated samples still count in n.
template <std::floating_point Scalar>
Scalar truncated_mean(std::span<const Scalar> values, Scalar c) {
  if (values.empty()) throw std::invalid_argument("truncated_mean: empty input");
  if (!(c > 0)) throw std::invalid_argument("truncated_mean: threshold must be positive");
  Scalar sum = 0;
  for (Scalar v : values) {
    if (std::abs(v) <= c) sum += v;
  }
  return sum / static_cast<Scalar>(values.size());
}

template <std::floating_point Scalar>
Scalar truncated_mean(const std::vector<Scalar>& values, Scalar c) {
  return truncated_mean(std::span<const Scalar>(values), c);
}

// median over j of (1/k) * sum of block j, k' consecutive blocks of size k.
template <std::floating_point Scalar>
Scalar median_of_means(std::span<const Scalar> values, std::size_t k, std::size_t k_prime) {
  if (k == 0 || k_prime == 0) throw std::invalid_argument("median_of_means: k and k' must be >= 1");
  if (values.size() < k * k_prime) {
    throw std::invalid_argument("median_of_means: fewer than k * k' values");
  }
  detail::require_finite(values.first(k * k_prime), "median_of_means");
  std::vector<Scalar> means(k_prime);
  for (std::size_t j = 0; j < k_prime; ++j) {
    Scalar s = 0;
    for (std::size_t i = 0; i < k; ++i) s += values[j * k + i];
    means[j] = s / static_cast<Scalar>(k);
  }
  return detail::median_inplace(std::span<Scalar>(means));
}

template <std::floating_point Scalar>
Scalar median_of_means(const std::vector<Scalar>& values, std::size_t k, std::size_t k_prime) {
  return median_of_means(std::span<const Scalar>(values), k, k_prime);
}

}  // namespace momlab
