#include "momlab/csv.hpp"

#include <array>
#include <charconv>
#include <stdexcept>

#include "momlab/experiment.hpp"

namespace momlab {

std::string format_double(double value) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf.data(), ptr);
}

void write_aggregate_csv(std::ostream& os, const std::vector<AggregateRow>& rows) {
  os << "algorithm,t,mean_regret,median_regret,mean_est_error\n";
  for (const auto& r : rows) {
    os << r.algorithm << ',' << r.t << ',' << format_double(r.mean_regret) << ','
       << format_double(r.median_regret) << ',' << format_double(r.mean_est_error) << '\n';
  }
}

void write_trace_csv(std::ostream& os, const RunTrace& trace) {
  os << "t,arm,instant_regret,cumulative_regret,est_error\n";
  for (std::size_t i = 0; i < trace.pulls.size(); ++i) {
    const auto& p = trace.pulls[i];
    os << p.t << ',' << p.arm << ',' << format_double(p.instant_regret) << ','
       << format_double(p.cumulative_regret) << ','
       << format_double(trace.estimation_error[i / trace.n_tilde]) << '\n';
  }
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "parameter,value,algorithm,final_mean_regret,final_median_regret\n";
  for (const auto& r : rows) {
    os << r.parameter << ',' << format_double(r.value) << ',' << r.algorithm << ','
       << format_double(r.final_mean_regret) << ',' << format_double(r.final_median_regret) << '\n';
  }
}

}  // namespace momlab
