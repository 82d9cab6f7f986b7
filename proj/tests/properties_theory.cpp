#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <initializer_list>

#include "momlab/theory.hpp"

using namespace momlab::theory;

TEST_SUITE("properties.theory") {

TEST_CASE("constant_C postcondition on an epsilon grid") {
  for (int i = 1; i <= 9; ++i) {
    const double eps = 0.1 * i;
    const double u = log_constant_C(eps);
    // log of 2 C^(1-eps) exp(-C^eps / 16), evaluated in log space for small eps.
    auto log_condition = [eps](double log_c) {
      return std::log(2.0) + (1.0 - eps) * log_c - std::exp(eps * log_c) / 16.0;
    };
    INFO("eps = " << eps << ", log C = " << u);
    CHECK(log_condition(u) <= 1e-9);
    if (u > 0.0) CHECK(log_condition(u + std::log1p(-1e-4)) > 0.0);
    if (i > 1) CHECK(u < log_constant_C(0.1 * (i - 1)));
  }
}

TEST_CASE("optimal epsilon is locally optimal") {
  for (double alpha : {0.5, 1.0, 1.5, 3.0}) {
    for (double delta : {0.01, 0.05}) {
      for (std::uint64_t T : {1000ULL, 10000ULL, 1000000ULL}) {
        const double eps = optimal_epsilon(alpha, delta, T);
        auto dominant = [&](double e) {
          const auto s = sample_size_terms({alpha, e, delta, T});
          return std::max(s.log_tail_term, s.log_bound_term);
        };
        INFO("alpha = " << alpha << ", delta = " << delta << ", T = " << T << ", eps = " << eps);
        if (eps - 0.1 > 0.0) CHECK(dominant(eps) <= dominant(eps - 0.1));
        if (eps + 0.1 < 1.0) CHECK(dominant(eps) <= dominant(eps + 0.1));
        // Where C does not bind, the full sample size is locally optimal too.
        auto c_binds = [&](double e) {
          const auto t = sample_size_terms({alpha, e, delta, T});
          return t.log_c_term >= std::max(t.log_tail_term, t.log_bound_term);
        };
        const auto n = required_sample_size({alpha, eps, delta, T});
        for (double e : {eps - 0.1, eps + 0.1}) {
          if (e <= 0.0 || e >= 1.0 || c_binds(e) || c_binds(eps)) continue;
          CHECK(n <= required_sample_size({alpha, e, delta, T}));
        }
      }
    }
  }
}

TEST_CASE("formulas are pure") {
  for (int rep = 0; rep < 3; ++rep) {
    CHECK(constant_C(0.37) == constant_C(0.37));
    CHECK(required_sample_size({0.8, 0.6, 0.02, 5000}) == required_sample_size({0.8, 0.6, 0.02, 5000}));
    CHECK(optimal_epsilon(1.3, 0.02, 777) == optimal_epsilon(1.3, 0.02, 777));
    CHECK(mom_bound(0.9, 0.4, 321.0, 0.1) == mom_bound(0.9, 0.4, 321.0, 0.1));
  }
}

TEST_CASE("sample size monotonicity") {
  std::uint64_t prev_T = 0;
  for (std::uint64_t T : {10ULL, 100ULL, 10000ULL, 1000000ULL}) {
    const auto n = required_sample_size({1.0, 0.5, 0.01, T});
    CHECK(n >= prev_T);
    prev_T = n;
  }
  std::uint64_t prev_alpha = ~0ULL;
  for (double alpha : {0.5, 0.75, 1.0, 2.0, 3.0}) {
    const auto n = required_sample_size({alpha, 0.5, 0.01, 10000});
    CHECK(n <= prev_alpha);
    prev_alpha = n;
  }
}

}  // TEST_SUITE
