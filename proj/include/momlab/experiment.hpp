#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "momlab/config.hpp"
#include "momlab/filter.hpp"

namespace momlab {

struct ExperimentResult {
  ExperimentConfig config;
  // traces[a][p]: algorithm config.algorithms[a] on path p.
  std::vector<std::vector<RunTrace>> traces;
};

// Runs every configured algorithm on n_paths paths. Path p draws its instance
// and noise from RngStream(base_seed, p); all algorithms on a path see the
// same instance and the same noise sequence. Paths are spread over
// config.workers threads; the result does not depend on the worker count.
ExperimentResult run_experiment(const ExperimentConfig& config);

// The path environment used by run_experiment.
BanditInstanceD path_instance(const ExperimentConfig& config, std::size_t path);

struct AggregateRow {
  std::string algorithm;
  std::size_t t;  // physical pull, 1-based
  double mean_regret;
  double median_regret;
  double mean_est_error;
};

// Per (algorithm, t) statistics over paths, ordered by algorithm as
// configured and then by t. An algorithm contributes n_tilde * floor(T / n_tilde)
// rows (T rows whenever n_tilde divides T).
std::vector<AggregateRow> aggregate(const ExperimentResult& result);

// Midpoint median, same convention as the estimators.
double median_of(std::vector<double> values);

enum class SweepParameter { epsilon, v };

std::string_view to_string(SweepParameter p);
SweepParameter parse_sweep_parameter(std::string_view name);

struct SweepRow {
  std::string parameter;
  double value;
  std::string algorithm;
  double final_mean_regret;
  double final_median_regret;
};

struct SweepPoint {
  double value;
  ExperimentConfig config;
  std::vector<AggregateRow> aggregate;
};

// One experiment per grid value with `parameter` overridden.
std::vector<SweepPoint> run_sweep(const ExperimentConfig& base, SweepParameter parameter,
                                  const std::vector<double>& grid);
std::vector<SweepRow> sweep_rows(SweepParameter parameter, const std::vector<SweepPoint>& points);

}  // namespace momlab
