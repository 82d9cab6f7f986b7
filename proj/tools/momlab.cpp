// momlab: heavy-tailed linear bandit experiments.
//
//   momlab simulate --config run.cfg [--seed S] [--workers N] [--out DIR] [--per-pull-traces BOOL]
//   momlab sweep    --config run.cfg --param epsilon|v --grid 0.3,0.4 [--seed S] [--workers N] [--out DIR]
//   momlab verify   lemma1   [--df 1] [--alpha A] [--m 9,17,33,65] [--trials 100000] [--seed S]
//   momlab verify   theorem1 [--df 0.5] [--epsilon 0.5] [--delta 0.05] [--n-tilde N] [--trials 10000]
//   momlab theory   --alpha 1 [--epsilon 0.5] --delta 0.01 --T 10000
//
// Exit status: 0 success, 1 a verification check failed, 2 invalid
// configuration or arguments, 3 output could not be written.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "momlab/config.hpp"
#include "momlab/csv.hpp"
#include "momlab/experiment.hpp"
#include "momlab/theory.hpp"
#include "momlab/verify.hpp"

namespace fs = std::filesystem;
using namespace momlab;

namespace {

constexpr int kExitVerifyFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunOverrides {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> workers;
  std::optional<std::string> out;
  std::optional<bool> per_pull_traces;
};

void add_run_flags(CLI::App* cmd, RunOverrides& o) {
  cmd->add_option("--config", o.config_path, "Experiment configuration file")->required();
  cmd->add_option("--seed", o.seed, "Override base_seed");
  cmd->add_option("--workers", o.workers, "Override worker thread count");
  cmd->add_option("--out", o.out, "Override output directory");
  cmd->add_option("--per-pull-traces", o.per_pull_traces, "Write one trace CSV per path");
}

ExperimentConfig resolve(const RunOverrides& o) {
  ExperimentConfig cfg = load_config(o.config_path);
  if (o.seed) cfg.base_seed = *o.seed;
  if (o.workers) cfg.workers = *o.workers;
  if (o.out) cfg.output_path = *o.out;
  if (o.per_pull_traces) cfg.per_pull_traces = *o.per_pull_traces;
  cfg.validate();
  return cfg;
}

fs::path prepare_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw IoError("cannot create output directory '" + dir.string() + "'");
  }
  return dir;
}

template <typename Writer>
void write_file(const fs::path& path, Writer&& writer) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open '" + path.string() + "' for writing");
  writer(os);
  os.flush();
  if (!os) throw IoError("write to '" + path.string() + "' failed");
}

void write_metadata(const fs::path& dir, const ExperimentConfig& cfg, double seconds) {
  write_file(dir / "resolved_config.txt", [&](std::ostream& os) { os << render_config(cfg); });
  nlohmann::json meta;
  meta["tool"] = "momlab";
  meta["version"] = MOMLAB_VERSION;
  meta["config"] = render_config(cfg);
  meta["wall_clock_seconds"] = seconds;
  write_file(dir / "run_meta.json", [&](std::ostream& os) { os << meta.dump(2) << '\n'; });
}

// Writes aggregate.csv (and traces when requested) for one experiment into dir.
std::vector<AggregateRow> simulate_into(const ExperimentConfig& cfg, const fs::path& dir) {
  const auto start = std::chrono::steady_clock::now();
  const ExperimentResult result = run_experiment(cfg);
  std::vector<AggregateRow> rows = aggregate(result);
  prepare_dir(dir);
  write_file(dir / "aggregate.csv", [&](std::ostream& os) { write_aggregate_csv(os, rows); });
  if (cfg.per_pull_traces) {
    const fs::path traces = prepare_dir(dir / "traces");
    for (std::size_t a = 0; a < cfg.algorithms.size(); ++a) {
      for (std::size_t p = 0; p < cfg.n_paths; ++p) {
        const std::string name = std::string(to_string(cfg.algorithms[a])) + "_path" + std::to_string(p) + ".csv";
        write_file(traces / name, [&](std::ostream& os) { write_trace_csv(os, result.traces[a][p]); });
      }
    }
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_metadata(dir, cfg, seconds);
  return rows;
}

void print_final_summary(const std::vector<AggregateRow>& rows) {
  std::cout << std::left << std::setw(24) << "algorithm" << std::right << std::setw(12) << "pulls"
            << std::setw(16) << "mean_regret" << std::setw(16) << "median_regret" << std::setw(16)
            << "mean_est_error" << '\n';
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i + 1 != rows.size() && rows[i + 1].algorithm == rows[i].algorithm) continue;
    const auto& r = rows[i];
    std::cout << std::left << std::setw(24) << r.algorithm << std::right << std::setw(12) << r.t
              << std::setw(16) << std::fixed << std::setprecision(3) << r.mean_regret << std::setw(16)
              << r.median_regret << std::setw(16) << std::setprecision(4) << r.mean_est_error << '\n';
    std::cout.unsetf(std::ios::floatfield);
  }
}

std::vector<double> parse_real_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError(what, "cannot parse '" + item + "'");
    }
  }
  if (out.empty()) throw ConfigError(what, "must be nonempty");
  return out;
}

int cmd_theory(std::optional<double> alpha_opt, std::optional<double> epsilon_opt, double delta,
               std::uint64_t T) {
  const double alpha = alpha_opt.value_or(1.0);
  std::cout << "alpha = " << alpha << ", delta = " << delta << ", T = " << T << '\n';
  double epsilon = 0.0;
  if (epsilon_opt) {
    epsilon = *epsilon_opt;
  } else {
    epsilon = theory::optimal_epsilon(alpha, delta, T);
    std::cout << "optimal epsilon = " << std::setprecision(6) << epsilon << '\n';
  }
  const theory::TheoryParams params{alpha, epsilon, delta, T};
  const theory::SampleSize s = theory::sample_size_terms(params);
  auto show = [](const char* name, double log_value) {
    std::cout << std::left << std::setw(44) << name << std::right << std::setprecision(8);
    if (log_value < 700.0) {
      std::cout << std::exp(log_value);
    } else {
      std::cout << "exp(" << log_value << ")";
    }
    std::cout << '\n';
  };
  std::cout << "epsilon = " << std::setprecision(6) << epsilon << '\n';
  show("C", s.log_c_term);
  show("(16 log(2T/delta))^(1/eps)", s.log_tail_term);
  show("(2 4^(2/alpha) log(4/delta))^(1/(1-eps))", s.log_bound_term);
  std::cout << std::left << std::setw(44) << "n_tilde" << std::right << s.n_tilde << '\n';
  std::cout << std::left << std::setw(44) << "mom_bound at n_tilde" << std::right << std::setprecision(6)
            << theory::mom_bound(alpha, epsilon, static_cast<double>(s.n_tilde), delta) << '\n';
  if (s.n_tilde > T) {
    std::cout << "warning: n_tilde > T; not even one full logical round fits in the horizon\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"momlab: mean-of-medians filtering for heavy-tailed linear bandits"};
  app.require_subcommand(1);

  RunOverrides sim;
  auto* simulate = app.add_subcommand("simulate", "Run a multi-path regret experiment");
  add_run_flags(simulate, sim);

  RunOverrides sw;
  std::string sweep_param;
  std::string sweep_grid = "0.3,0.4,0.5,0.6,0.7,0.8";
  auto* sweep = app.add_subcommand("sweep", "Repeat an experiment over a parameter grid");
  add_run_flags(sweep, sw);
  sweep->add_option("--param", sweep_param, "epsilon or v")->required();
  sweep->add_option("--grid", sweep_grid, "Comma-separated grid values");

  auto* verify = app.add_subcommand("verify", "Monte-Carlo checks of the concentration results");
  verify->require_subcommand(1);
  double v_df = 1.0;
  std::optional<double> v_alpha;
  std::string v_m = "9,17,33,65";
  std::size_t v_trials = 0;
  std::uint64_t v_seed = 1;
  double v_epsilon = 0.5;
  double v_delta = 0.05;
  std::optional<std::size_t> v_n_tilde;
  std::string v_sampling = "direct";
  std::optional<std::string> v_out;
  auto add_verify_common = [&](CLI::App* c, double default_df) {
    v_df = default_df;
    c->add_option("--df", v_df, "Student-t degrees of freedom of the noise");
    c->add_option("--alpha", v_alpha, "Tail index used by the bound (default: df)");
    c->add_option("--trials", v_trials, "Monte-Carlo repetitions");
    c->add_option("--seed", v_seed, "Base seed");
    c->add_option("--out", v_out, "Also write the table as CSV to this file");
  };
  auto* lemma1 = verify->add_subcommand("lemma1", "Median concentration: Pr(|median| <= 4^(1/alpha))");
  add_verify_common(lemma1, 1.0);
  lemma1->add_option("--m", v_m, "Comma-separated sample counts");
  auto* theorem1 = verify->add_subcommand("theorem1", "Mean-of-medians concentration");
  theorem1->add_option("--df", v_df, "Student-t degrees of freedom of the noise");
  theorem1->add_option("--alpha", v_alpha, "Tail index used by the bound (default: df)");
  theorem1->add_option("--trials", v_trials, "Monte-Carlo repetitions");
  theorem1->add_option("--seed", v_seed, "Base seed");
  theorem1->add_option("--out", v_out, "Also write the report as CSV to this file");
  theorem1->add_option("--epsilon", v_epsilon, "Block-size exponent");
  theorem1->add_option("--delta", v_delta, "Failure probability");
  theorem1->add_option("--n-tilde", v_n_tilde, "Samples per estimate (default: theoretical value)");
  theorem1->add_option("--sampling", v_sampling, "direct or order_statistics");

  std::optional<double> t_alpha;
  std::optional<double> t_epsilon;
  double t_delta = 0.01;
  std::uint64_t t_T = 10000;
  auto* theory_cmd = app.add_subcommand("theory", "Sample-size constants and bounds");
  theory_cmd->add_option("--alpha", t_alpha, "Tail index")->required();
  theory_cmd->add_option("--epsilon", t_epsilon, "Block-size exponent (default: optimal)");
  theory_cmd->add_option("--delta", t_delta, "Failure probability");
  theory_cmd->add_option("--T", t_T, "Horizon in physical pulls");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*simulate) {
      const ExperimentConfig cfg = resolve(sim);
      const auto rows = simulate_into(cfg, cfg.output_path);
      print_final_summary(rows);
      std::cout << "wrote " << (fs::path(cfg.output_path) / "aggregate.csv").string() << '\n';
      return 0;
    }
    if (*sweep) {
      const ExperimentConfig base = resolve(sw);
      const SweepParameter param = parse_sweep_parameter(sweep_param);
      const std::vector<double> grid = parse_real_list(sweep_grid, "grid");
      const fs::path dir = prepare_dir(base.output_path);
      std::vector<SweepPoint> points;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        ExperimentConfig cfg = base;
        (param == SweepParameter::epsilon ? cfg.epsilon : cfg.v) = grid[i];
        try {
          cfg.validate();
        } catch (const ConfigError& e) {
          throw ConfigError("grid", "value " + format_double(grid[i]) + " rejected (" + e.what() + ")");
        }
        cfg.output_path = (dir / ("point_" + std::to_string(i))).string();
        points.push_back({grid[i], cfg, simulate_into(cfg, cfg.output_path)});
      }
      const auto rows = sweep_rows(param, points);
      write_file(dir / "sweep.csv", [&](std::ostream& os) { write_sweep_csv(os, rows); });
      for (const auto& r : rows) {
        std::cout << r.parameter << " = " << std::setw(8) << r.value << "  " << std::left << std::setw(24)
                  << r.algorithm << std::right << " final mean regret " << r.final_mean_regret << '\n';
      }
      std::cout << "wrote " << (dir / "sweep.csv").string() << '\n';
      return 0;
    }
    if (*theory_cmd) return cmd_theory(t_alpha, t_epsilon, t_delta, t_T);
    if (*lemma1 || *theorem1) {
      const NoiseModel model = NoiseModel::student_t(v_df);
      const double alpha = v_alpha.value_or(v_df);
      RngStream rng(v_seed, 0);
      std::ostringstream csv;
      bool ok = true;
      if (*lemma1) {
        std::vector<std::size_t> ms;
        for (double m : parse_real_list(v_m, "m")) {
          if (!(m >= 1.0) || m != std::floor(m)) throw ConfigError("m", "values must be positive integers");
          ms.push_back(static_cast<std::size_t>(m));
        }
        const std::size_t trials = v_trials ? v_trials : 100000;
        const auto rows = verify_lemma1(model, alpha, ms, trials, rng);
        std::printf("lemma1: %s, alpha = %g, radius = %g, trials = %zu\n", model.describe().c_str(), alpha,
                    theory::median_bound(alpha), trials);
        std::printf("%6s %12s %12s %12s %8s\n", "m", "bound", "coverage", "std_error", "result");
        csv << "m,bound,coverage,std_error,vacuous,pass\n";
        for (const auto& r : rows) {
          std::printf("%6zu %12.6f %12.6f %12.6f %8s\n", r.m, r.bound, r.coverage, r.std_error,
                      r.vacuous ? "vacuous" : (r.pass ? "pass" : "FAIL"));
          csv << r.m << ',' << format_double(r.bound) << ',' << format_double(r.coverage) << ','
              << format_double(r.std_error) << ',' << (r.vacuous ? "true" : "false") << ','
              << (r.pass ? "true" : "false") << '\n';
          ok = ok && r.pass;
        }
      } else {
        MomSampling sampling;
        if (v_sampling == "direct") sampling = MomSampling::direct;
        else if (v_sampling == "order_statistics") sampling = MomSampling::order_statistics;
        else throw ConfigError("sampling", "expected direct or order_statistics");
        const std::size_t n_tilde =
            v_n_tilde ? *v_n_tilde : theory::required_sample_size({alpha, v_epsilon, v_delta, 1});
        const std::size_t trials = v_trials ? v_trials : 10000;
        const auto r = verify_theorem1(model, alpha, v_epsilon, v_delta, n_tilde, trials, rng, sampling);
        std::printf("theorem1: %s, alpha = %g, epsilon = %g, delta = %g, sampling = %s\n",
                    model.describe().c_str(), alpha, v_epsilon, v_delta, std::string(to_string(sampling)).c_str());
        std::printf("  n_tilde = %zu (k = %zu, k' = %zu), bound = %.6g, trials = %zu\n", r.plan.n_tilde,
                    r.plan.k, r.plan.k_prime, r.bound, r.trials);
        std::printf("  coverage = %.6f (se %.6f, need >= %.6f)  %s\n", r.coverage, r.coverage_se,
                    1.0 - v_delta - kCoverageSlackStdErrors * r.coverage_se, r.coverage_pass ? "pass" : "FAIL");
        std::printf("  mean = %.6g (se %.6g, need |mean| <= %.6g)  %s\n", r.mean, r.mean_se,
                    kMeanSlackStdErrors * r.mean_se, r.mean_pass ? "pass" : "FAIL");
        csv << "n_tilde,k,k_prime,bound,trials,coverage,coverage_se,mean,mean_se,coverage_pass,mean_pass\n"
            << r.plan.n_tilde << ',' << r.plan.k << ',' << r.plan.k_prime << ',' << format_double(r.bound) << ','
            << r.trials << ',' << format_double(r.coverage) << ',' << format_double(r.coverage_se) << ','
            << format_double(r.mean) << ',' << format_double(r.mean_se) << ','
            << (r.coverage_pass ? "true" : "false") << ',' << (r.mean_pass ? "true" : "false") << '\n';
        ok = r.pass();
      }
      if (v_out) write_file(*v_out, [&](std::ostream& os) { os << csv.str(); });
      return ok ? 0 : kExitVerifyFailed;
    }
  } catch (const ConfigError& e) {
    std::cerr << "momlab: invalid configuration: " << e.what() << '\n';
    return kExitConfig;
  } catch (const IoError& e) {
    std::cerr << "momlab: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "momlab: invalid argument: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "momlab: " << e.what() << '\n';
    return kExitConfig;
  }
  return 0;
}
