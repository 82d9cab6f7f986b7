#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "momlab/filter.hpp"
#include "momlab/noise.hpp"

namespace momlab {

enum class AlgorithmKind { oful_raw, oful_mom, oful_truncated, oful_median_of_means };

std::string_view to_string(AlgorithmKind kind);
AlgorithmKind parse_algorithm(std::string_view name);

std::string_view to_string(ArmMode mode);

// Thrown for any configuration problem; field() names the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  [[nodiscard]] const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

inline constexpr int kConfigSchemaVersion = 1;

struct ExperimentConfig {
  std::size_t d = 10;
  std::size_t K = 20;
  std::size_t horizon_T = 10000;
  std::size_t n_paths = 10;
  NoiseModel noise = NoiseModel::student_t(1.0);
  double epsilon = 0.5;
  std::size_t n_tilde = 25;
  std::vector<AlgorithmKind> algorithms{AlgorithmKind::oful_raw, AlgorithmKind::oful_mom};
  double v = 1.0;
  double ridge_lambda = 1.0;
  double delta = 0.01;
  double trunc_c = 10.0;
  std::uint64_t base_seed = 1;
  ArmMode arm_mode = ArmMode::fixed;
  std::string output_path = "momlab_out";
  std::size_t workers = 1;
  bool per_pull_traces = false;

  // Throws ConfigError naming the first invalid field.
  void validate() const;

  [[nodiscard]] AlgorithmConfig algorithm_config() const;
  [[nodiscard]] FilterConfig filter_for(AlgorithmKind kind) const;
};

// Flat "key = value" text, one entry per line, '#' starts a comment. The
// first entry must be `schema_version = 1`. Unknown or repeated keys are
// errors; keys that are absent keep their defaults.
//
//   schema_version = 1
//   d = 10
//   K = 20
//   horizon_T = 10000
//   n_paths = 10
//   noise = student_t          # or gaussian
//   noise_df = 0.5             # student_t only
//   noise_sigma = 1            # gaussian only
//   epsilon = 0.5
//   n_tilde = 25
//   algorithms = oful_raw, oful_mom, oful_truncated, oful_median_of_means
//   v = 1
//   ridge_lambda = 1
//   delta = 0.01
//   trunc_c = 10
//   base_seed = 1
//   arm_mode = fixed           # or per_round
//   output_path = momlab_out
//   workers = 1
//   per_pull_traces = false
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);

// Canonical text form; parse_config(render_config(c)) reproduces c exactly.
std::string render_config(const ExperimentConfig& cfg);

}  // namespace momlab
