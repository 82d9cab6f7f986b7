#include <doctest.h>

#include <algorithm>
#include <sstream>
#include <string>

#include "momlab/config.hpp"
#include "momlab/csv.hpp"
#include "momlab/experiment.hpp"
#include "momlab/verify.hpp"

using namespace momlab;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.d = 4;
  cfg.K = 6;
  cfg.horizon_T = 400;
  cfg.n_paths = 3;
  cfg.n_tilde = 25;
  cfg.algorithms = {AlgorithmKind::oful_raw, AlgorithmKind::oful_mom, AlgorithmKind::oful_truncated,
                    AlgorithmKind::oful_median_of_means};
  cfg.noise = NoiseModel::student_t(1.0);
  return cfg;
}

std::string field_of(const std::string& text) {
  try {
    (void)parse_config(text);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "";
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("config parsing") {
  const ExperimentConfig cfg = parse_config(
      "schema_version = 1\n"
      "# comment line\n"
      "d = 3   # trailing comment\n"
      "noise = gaussian\n"
      "noise_sigma = 0.25\n"
      "algorithms = oful_mom, oful_raw\n"
      "arm_mode = per_round\n"
      "per_pull_traces = true\n");
  CHECK(cfg.d == 3);
  CHECK(cfg.K == 20);
  CHECK(cfg.noise == NoiseModel::gaussian(0.25));
  REQUIRE(cfg.algorithms.size() == 2);
  CHECK(cfg.algorithms[0] == AlgorithmKind::oful_mom);
  CHECK(cfg.arm_mode == ArmMode::per_round);
  CHECK(cfg.per_pull_traces);
}

TEST_CASE("config errors name the field") {
  CHECK(field_of("schema_version = 1\nhorizon = 5\n") == "horizon");
  CHECK(field_of("d = 5\n") == "schema_version");
  CHECK(field_of("schema_version = 2\n") == "schema_version");
  CHECK(field_of("schema_version = 1\nd = 5\nd = 6\n") == "d");
  CHECK(field_of("schema_version = 1\nd = -5\n") == "d");
  CHECK(field_of("schema_version = 1\nepsilon = 1.5\n") == "epsilon");
  CHECK(field_of("schema_version = 1\nnoise_df = 0\n") == "noise_df");
  CHECK(field_of("schema_version = 1\nalgorithms = oful_magic\n") == "algorithms");
  CHECK(field_of("schema_version = 1\nhorizon_T = 10\nn_tilde = 25\n") == "n_tilde");
  CHECK(field_of("schema_version = 1\nnoise_sigma = 1\n") == "noise_sigma");
  CHECK(field_of("schema_version = 1\nv = 0\n") == "v");
  CHECK(field_of("schema_version = 1\nbase_seed = x\n") == "base_seed");
  CHECK(field_of("schema_version = 1\njust words\n") == "line 2");
}

TEST_CASE("render_config round trips") {
  ExperimentConfig cfg = small_config();
  cfg.v = 1.0 / 3.0;
  cfg.epsilon = 0.55;
  cfg.base_seed = 18446744073709551615ULL;
  cfg.arm_mode = ArmMode::per_round;
  const ExperimentConfig back = parse_config(render_config(cfg));
  CHECK(render_config(back) == render_config(cfg));
  CHECK(back.v == cfg.v);
  CHECK(back.base_seed == cfg.base_seed);
  CHECK(back.algorithms == cfg.algorithms);
}

TEST_CASE("format_double is shortest round trip") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(2.0) == "2");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("minimal run: one logical round") {
  ExperimentConfig cfg = small_config();
  cfg.n_paths = 1;
  cfg.horizon_T = 25;
  cfg.algorithms = {AlgorithmKind::oful_mom};
  const auto rows = aggregate(run_experiment(cfg));
  CHECK(rows.size() == 25);
  CHECK(rows.back().t == 25);
}

TEST_CASE("aggregate columns match recomputation from traces") {
  const ExperimentConfig cfg = small_config();
  const ExperimentResult res = run_experiment(cfg);
  const auto rows = aggregate(res);
  REQUIRE(rows.size() == cfg.algorithms.size() * cfg.horizon_T);
  std::size_t idx = 0;
  for (std::size_t a = 0; a < cfg.algorithms.size(); ++a) {
    for (std::size_t t = 0; t < cfg.horizon_T; ++t, ++idx) {
      std::vector<double> regrets;
      double err = 0.0;
      for (const auto& trace : res.traces[a]) {
        regrets.push_back(trace.pulls[t].cumulative_regret);
        err += trace.estimation_error[t / trace.n_tilde];
      }
      CHECK(rows[idx].algorithm == to_string(cfg.algorithms[a]));
      CHECK(rows[idx].t == t + 1);
      double mean = 0.0;
      for (double r : regrets) mean += r;
      CHECK(rows[idx].mean_regret == doctest::Approx(mean / 3.0));
      std::sort(regrets.begin(), regrets.end());
      CHECK(rows[idx].median_regret == regrets[1]);
      CHECK(rows[idx].mean_est_error == doctest::Approx(err / 3.0));
    }
  }
}

TEST_CASE("median_of uses the midpoint rule") {
  CHECK(median_of({4.0, 1.0, 3.0, 2.0}) == 2.5);
  CHECK(median_of({5.0}) == 5.0);
  CHECK_THROWS(median_of({}));
}

TEST_CASE("worker count does not change results") {
  ExperimentConfig cfg = small_config();
  cfg.n_paths = 5;
  std::ostringstream one, many;
  write_aggregate_csv(one, aggregate(run_experiment(cfg)));
  cfg.workers = 3;
  write_aggregate_csv(many, aggregate(run_experiment(cfg)));
  CHECK(one.str() == many.str());
}

TEST_CASE("CSV headers") {
  ExperimentConfig cfg = small_config();
  cfg.n_paths = 1;
  const auto res = run_experiment(cfg);
  std::ostringstream agg, trace;
  write_aggregate_csv(agg, aggregate(res));
  write_trace_csv(trace, res.traces[1][0]);
  CHECK(agg.str().rfind("algorithm,t,mean_regret,median_regret,mean_est_error\n", 0) == 0);
  CHECK(trace.str().rfind("t,arm,instant_regret,cumulative_regret,est_error\n", 0) == 0);
  const std::string text = trace.str();
  CHECK(std::count(text.begin(), text.end(), '\n') == 401);
}

TEST_CASE("sweep rows and single-point equivalence") {
  ExperimentConfig cfg = small_config();
  const auto points = run_sweep(cfg, SweepParameter::epsilon, {0.5});
  const auto direct = aggregate(run_experiment(cfg));
  std::ostringstream a, b;
  write_aggregate_csv(a, points[0].aggregate);
  write_aggregate_csv(b, direct);
  CHECK(a.str() == b.str());
  const auto rows = sweep_rows(SweepParameter::epsilon, points);
  CHECK(rows.size() == cfg.algorithms.size());
  CHECK(rows[1].final_mean_regret == doctest::Approx(direct[2 * cfg.horizon_T - 1].mean_regret));
  CHECK_THROWS_AS(run_sweep(cfg, SweepParameter::epsilon, {1.2}), ConfigError);
  CHECK_THROWS_AS(run_sweep(cfg, SweepParameter::v, {}), ConfigError);
  CHECK(parse_sweep_parameter("v") == SweepParameter::v);
  CHECK_THROWS(parse_sweep_parameter("lambda"));
}

TEST_CASE("lemma1 report marks vacuous rows") {
  RngStream rng(41, 0);
  const std::vector<std::size_t> m{1, 17};
  const auto rows = verify_lemma1(NoiseModel::student_t(1.0), 1.0, m, 20000, rng);
  CHECK(rows[0].vacuous);
  CHECK(rows[0].pass);
  CHECK_FALSE(rows[1].vacuous);
  CHECK(rows[1].bound == doctest::Approx(0.762).epsilon(1e-3));
  CHECK(rows[1].coverage > 0.99);
  CHECK(rows[1].pass);
}

}  // TEST_SUITE
