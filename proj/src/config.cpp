#include "momlab/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "momlab/csv.hpp"

namespace momlab {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::size_t parse_size(const std::string& key, std::string_view text) {
  std::uint64_t v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw ConfigError(key, "expected a non-negative integer, got '" + std::string(text) + "'");
  return static_cast<std::size_t>(v);
}

std::uint64_t parse_u64(const std::string& key, std::string_view text) {
  std::uint64_t v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw ConfigError(key, "expected an unsigned 64-bit integer, got '" + std::string(text) + "'");
  return v;
}

double parse_real(const std::string& key, std::string_view text) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw ConfigError(key, "expected a finite real number, got '" + std::string(text) + "'");
  }
  return v;
}

bool parse_bool(const std::string& key, std::string_view text) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw ConfigError(key, "expected true or false, got '" + std::string(text) + "'");
}

std::vector<AlgorithmKind> parse_algorithms(const std::string& key, std::string_view text) {
  std::vector<AlgorithmKind> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const auto item = trim(text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos));
    if (item.empty()) throw ConfigError(key, "empty algorithm name");
    try {
      out.push_back(parse_algorithm(item));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(key, e.what());
    }
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

std::string_view to_string(AlgorithmKind kind) {
  switch (kind) {
    case AlgorithmKind::oful_raw: return "oful_raw";
    case AlgorithmKind::oful_mom: return "oful_mom";
    case AlgorithmKind::oful_truncated: return "oful_truncated";
    case AlgorithmKind::oful_median_of_means: return "oful_median_of_means";
  }
  return "unknown";
}

AlgorithmKind parse_algorithm(std::string_view name) {
  for (auto kind : {AlgorithmKind::oful_raw, AlgorithmKind::oful_mom, AlgorithmKind::oful_truncated,
                    AlgorithmKind::oful_median_of_means}) {
    if (to_string(kind) == name) return kind;
  }
  throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

std::string_view to_string(ArmMode mode) {
  return mode == ArmMode::fixed ? "fixed" : "per_round";
}

void ExperimentConfig::validate() const {
  if (d < 1) throw ConfigError("d", "must be >= 1");
  if (K < 1) throw ConfigError("K", "must be >= 1");
  if (horizon_T < 1) throw ConfigError("horizon_T", "must be >= 1");
  if (n_paths < 1) throw ConfigError("n_paths", "must be >= 1");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ConfigError("epsilon", "must lie in (0, 1)");
  if (n_tilde < 1) throw ConfigError("n_tilde", "must be >= 1");
  if (algorithms.empty()) throw ConfigError("algorithms", "at least one algorithm is required");
  if (std::set<AlgorithmKind>(algorithms.begin(), algorithms.end()).size() != algorithms.size()) {
    throw ConfigError("algorithms", "duplicate algorithm");
  }
  if (!(v > 0.0)) throw ConfigError("v", "must be positive");
  if (!(ridge_lambda > 0.0)) throw ConfigError("ridge_lambda", "must be positive");
  if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("delta", "must lie in (0, 1)");
  if (!(trunc_c > 0.0)) throw ConfigError("trunc_c", "must be positive");
  if (workers < 1) throw ConfigError("workers", "must be >= 1");
  if (output_path.empty()) throw ConfigError("output_path", "must be nonempty");
  const bool filtered = std::any_of(algorithms.begin(), algorithms.end(),
                                    [](AlgorithmKind a) { return a != AlgorithmKind::oful_raw; });
  if (filtered) {
    if (horizon_T < n_tilde) throw ConfigError("n_tilde", "exceeds horizon_T");
    try {
      (void)block_plan(n_tilde, epsilon);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("n_tilde", e.what());
    }
  }
}

AlgorithmConfig ExperimentConfig::algorithm_config() const {
  AlgorithmConfig alg;
  alg.ridge_lambda = ridge_lambda;
  alg.sub_gauss_proxy_v = v;
  alg.delta = delta;
  return alg;
}

FilterConfig ExperimentConfig::filter_for(AlgorithmKind kind) const {
  switch (kind) {
    case AlgorithmKind::oful_raw: return FilterConfig::raw();
    case AlgorithmKind::oful_mom: return FilterConfig::mean_of_medians(n_tilde, epsilon);
    case AlgorithmKind::oful_truncated: return FilterConfig::truncated_mean(n_tilde, trunc_c);
    case AlgorithmKind::oful_median_of_means: {
      // Same (k, k') geometry as the mean-of-medians filter.
      const BlockPlan plan = block_plan(n_tilde, epsilon);
      return FilterConfig::median_of_means(n_tilde, plan.k, plan.k_prime);
    }
  }
  throw std::invalid_argument("filter_for: unknown algorithm");
}

ExperimentConfig parse_config(std::string_view text) {
  std::map<std::string, std::string, std::less<>> entries;
  std::vector<std::string> order;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view body(line);
    if (const auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
    body = trim(body);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(lineno), "expected 'key = value'");
    }
    std::string key(trim(body.substr(0, eq)));
    std::string value(trim(body.substr(eq + 1)));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno), "missing key");
    if (!entries.emplace(key, value).second) throw ConfigError(key, "repeated key");
    order.push_back(key);
  }
  if (order.empty() || order.front() != "schema_version") {
    throw ConfigError("schema_version", "must be the first entry");
  }
  if (parse_size("schema_version", entries["schema_version"]) != kConfigSchemaVersion) {
    throw ConfigError("schema_version", "unsupported version (expected " +
                                            std::to_string(kConfigSchemaVersion) + ")");
  }

  ExperimentConfig cfg;
  std::string noise_kind = "student_t";
  double noise_df = 1.0;
  double noise_sigma = 1.0;
  bool has_df = false, has_sigma = false;
  for (const auto& [key, value] : entries) {
    if (key == "schema_version") continue;
    if (key == "d") cfg.d = parse_size(key, value);
    else if (key == "K") cfg.K = parse_size(key, value);
    else if (key == "horizon_T") cfg.horizon_T = parse_size(key, value);
    else if (key == "n_paths") cfg.n_paths = parse_size(key, value);
    else if (key == "noise") noise_kind = value;
    else if (key == "noise_df") { noise_df = parse_real(key, value); has_df = true; }
    else if (key == "noise_sigma") { noise_sigma = parse_real(key, value); has_sigma = true; }
    else if (key == "epsilon") cfg.epsilon = parse_real(key, value);
    else if (key == "n_tilde") cfg.n_tilde = parse_size(key, value);
    else if (key == "algorithms") cfg.algorithms = parse_algorithms(key, value);
    else if (key == "v") cfg.v = parse_real(key, value);
    else if (key == "ridge_lambda") cfg.ridge_lambda = parse_real(key, value);
    else if (key == "delta") cfg.delta = parse_real(key, value);
    else if (key == "trunc_c") cfg.trunc_c = parse_real(key, value);
    else if (key == "base_seed") cfg.base_seed = parse_u64(key, value);
    else if (key == "arm_mode") {
      if (value == "fixed") cfg.arm_mode = ArmMode::fixed;
      else if (value == "per_round") cfg.arm_mode = ArmMode::per_round;
      else throw ConfigError(key, "expected fixed or per_round, got '" + value + "'");
    }
    else if (key == "output_path") cfg.output_path = value;
    else if (key == "workers") cfg.workers = parse_size(key, value);
    else if (key == "per_pull_traces") cfg.per_pull_traces = parse_bool(key, value);
    else throw ConfigError(key, "unknown key");
  }

  try {
    if (noise_kind == "student_t") {
      if (has_sigma) throw ConfigError("noise_sigma", "only valid with noise = gaussian");
      cfg.noise = NoiseModel::student_t(noise_df);
    } else if (noise_kind == "gaussian") {
      if (has_df) throw ConfigError("noise_df", "only valid with noise = student_t");
      cfg.noise = NoiseModel::gaussian(noise_sigma);
    } else {
      throw ConfigError("noise", "expected student_t or gaussian, got '" + noise_kind + "'");
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(noise_kind == "gaussian" ? "noise_sigma" : "noise_df", e.what());
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string render_config(const ExperimentConfig& cfg) {
  std::ostringstream os;
  os << "schema_version = " << kConfigSchemaVersion << '\n'
     << "d = " << cfg.d << '\n'
     << "K = " << cfg.K << '\n'
     << "horizon_T = " << cfg.horizon_T << '\n'
     << "n_paths = " << cfg.n_paths << '\n';
  if (cfg.noise.kind() == NoiseKind::student_t) {
    os << "noise = student_t\n" << "noise_df = " << format_double(cfg.noise.df()) << '\n';
  } else {
    os << "noise = gaussian\n" << "noise_sigma = " << format_double(cfg.noise.sigma()) << '\n';
  }
  os << "epsilon = " << format_double(cfg.epsilon) << '\n' << "n_tilde = " << cfg.n_tilde << '\n';
  os << "algorithms = ";
  for (std::size_t i = 0; i < cfg.algorithms.size(); ++i) {
    os << (i ? ", " : "") << to_string(cfg.algorithms[i]);
  }
  os << '\n'
     << "v = " << format_double(cfg.v) << '\n'
     << "ridge_lambda = " << format_double(cfg.ridge_lambda) << '\n'
     << "delta = " << format_double(cfg.delta) << '\n'
     << "trunc_c = " << format_double(cfg.trunc_c) << '\n'
     << "base_seed = " << cfg.base_seed << '\n'
     << "arm_mode = " << to_string(cfg.arm_mode) << '\n'
     << "output_path = " << cfg.output_path << '\n'
     << "workers = " << cfg.workers << '\n'
     << "per_pull_traces = " << (cfg.per_pull_traces ? "true" : "false") << '\n';
  return os.str();
}

}  // namespace momlab
