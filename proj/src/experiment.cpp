#include "momlab/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace momlab {

BanditInstanceD path_instance(const ExperimentConfig& config, std::size_t path) {
  RngStream inst_rng = RngStream(config.base_seed, path).derive(stream_tag::instance);
  return generate_instance<double>(static_cast<Eigen::Index>(config.d),
                                   static_cast<Eigen::Index>(config.K), config.noise, inst_rng);
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  ExperimentResult result;
  result.config = config;
  const std::size_t n_alg = config.algorithms.size();
  result.traces.assign(n_alg, std::vector<RunTrace>(config.n_paths));

  const AlgorithmConfig alg = config.algorithm_config();
  std::vector<FilterConfig> filters;
  std::vector<Estimator> estimators;
  for (auto kind : config.algorithms) {
    filters.push_back(config.filter_for(kind));
    estimators.push_back(make_estimator(filters.back()));
  }

  auto run_one_path = [&](std::size_t p) {
    const BanditInstanceD env = path_instance(config, p);
    const RngStream path_rng(config.base_seed, p);
    for (std::size_t a = 0; a < n_alg; ++a) {
      result.traces[a][p] = run_path(env, alg, filters[a], estimators[a], config.horizon_T,
                                     path_rng, config.arm_mode);
    }
  };

  const std::size_t workers = std::min(config.workers, config.n_paths);
  if (workers <= 1) {
    for (std::size_t p = 0; p < config.n_paths; ++p) run_one_path(p);
    return result;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t p = next++; p < config.n_paths; p = next++) {
        try {
          run_one_path(p);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
  return result;
}

double median_of(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median_of: empty input");
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return (lower + upper) / 2.0;
}

std::vector<AggregateRow> aggregate(const ExperimentResult& result) {
  std::vector<AggregateRow> rows;
  const std::size_t n_paths = result.config.n_paths;
  std::vector<double> column(n_paths);
  for (std::size_t a = 0; a < result.traces.size(); ++a) {
    const auto& paths = result.traces[a];
    const std::size_t pulls = paths.front().pulls.size();
    const std::size_t n_tilde = paths.front().n_tilde;
    const std::string name(to_string(result.config.algorithms[a]));
    for (std::size_t i = 0; i < pulls; ++i) {
      double regret_sum = 0.0;
      double error_sum = 0.0;
      for (std::size_t p = 0; p < n_paths; ++p) {
        column[p] = paths[p].pulls[i].cumulative_regret;
        regret_sum += column[p];
        error_sum += paths[p].estimation_error[i / n_tilde];
      }
      rows.push_back({name, i + 1, regret_sum / static_cast<double>(n_paths), median_of(column),
                      error_sum / static_cast<double>(n_paths)});
    }
  }
  return rows;
}

std::string_view to_string(SweepParameter p) { return p == SweepParameter::epsilon ? "epsilon" : "v"; }

SweepParameter parse_sweep_parameter(std::string_view name) {
  if (name == "epsilon") return SweepParameter::epsilon;
  if (name == "v") return SweepParameter::v;
  throw std::invalid_argument("unknown sweep parameter '" + std::string(name) + "'");
}

std::vector<SweepPoint> run_sweep(const ExperimentConfig& base, SweepParameter parameter,
                                  const std::vector<double>& grid) {
  if (grid.empty()) throw ConfigError("grid", "must be nonempty");
  std::vector<SweepPoint> points;
  for (double value : grid) {
    ExperimentConfig cfg = base;
    if (parameter == SweepParameter::epsilon) {
      cfg.epsilon = value;
    } else {
      cfg.v = value;
    }
    try {
      cfg.validate();
    } catch (const ConfigError& e) {
      throw ConfigError("grid", "value " + std::to_string(value) + " rejected: " + e.what());
    }
    points.push_back({value, cfg, aggregate(run_experiment(cfg))});
  }
  return points;
}

std::vector<SweepRow> sweep_rows(SweepParameter parameter, const std::vector<SweepPoint>& points) {
  std::vector<SweepRow> rows;
  for (const auto& point : points) {
    for (std::size_t i = 0; i < point.aggregate.size(); ++i) {
      const auto& row = point.aggregate[i];
      const bool last_of_algorithm =
          i + 1 == point.aggregate.size() || point.aggregate[i + 1].algorithm != row.algorithm;
      if (last_of_algorithm) {
        rows.push_back({std::string(to_string(parameter)), point.value, row.algorithm,
                        row.mean_regret, row.median_regret});
      }
    }
  }
  return rows;
}

}  // namespace momlab
