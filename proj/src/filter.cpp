#include "momlab/filter.hpp"

namespace momlab {

std::string_view to_string(FilterKind kind) {
  switch (kind) {
    case FilterKind::raw: return "raw";
    case FilterKind::mean_of_medians: return "mean_of_medians";
    case FilterKind::truncated_mean: return "truncated_mean";
    case FilterKind::median_of_means: return "median_of_means";
  }
  return "unknown";
}

void FilterConfig::validate() const {
  if (n_tilde == 0) throw std::invalid_argument("filter: n_tilde must be >= 1");
  switch (kind) {
    case FilterKind::raw:
      if (n_tilde != 1) throw std::invalid_argument("raw filter: n_tilde must be 1");
      break;
    case FilterKind::mean_of_medians:
      if (plan != block_plan(n_tilde, plan.epsilon)) {
        throw std::invalid_argument("mean-of-medians filter: plan does not match n_tilde");
      }
      break;
    case FilterKind::truncated_mean:
      if (!(truncation_c > 0.0)) throw std::invalid_argument("truncated filter: c must be positive");
      break;
    case FilterKind::median_of_means:
      if (plan.k == 0 || plan.k_prime == 0 || plan.used() > n_tilde) {
        throw std::invalid_argument("median-of-means filter: need 1 <= k * k' <= n_tilde");
      }
      break;
  }
}

Estimator make_estimator(const FilterConfig& cfg) {
  cfg.validate();
  switch (cfg.kind) {
    case FilterKind::raw:
      return [](std::span<const double> r) { return r.front(); };
    case FilterKind::mean_of_medians:
      return [plan = cfg.plan](std::span<const double> r) { return mean_of_medians(r, plan); };
    case FilterKind::truncated_mean:
      return [c = cfg.truncation_c](std::span<const double> r) { return truncated_mean(r, c); };
    case FilterKind::median_of_means:
      return [k = cfg.plan.k, kp = cfg.plan.k_prime](std::span<const double> r) {
        return median_of_means(r, k, kp);
      };
  }
  throw std::invalid_argument("make_estimator: unknown filter kind");
}

}  // namespace momlab
