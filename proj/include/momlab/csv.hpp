#pragma once

// CSV output. UTF-8, one header row, '.' decimal separator, '\n' line ends.
// Reals are written in shortest round-trip form so equal values always
// produce equal bytes.

#include <ostream>
#include <string>
#include <vector>

#include "momlab/filter.hpp"

namespace momlab {

std::string format_double(double value);

struct AggregateRow;
struct SweepRow;

// algorithm,t,mean_regret,median_regret,mean_est_error
void write_aggregate_csv(std::ostream& os, const std::vector<AggregateRow>& rows);

// t,arm,instant_regret,cumulative_regret,est_error
// est_error is the relative parameter error after the logical round that
// contains pull t.
void write_trace_csv(std::ostream& os, const RunTrace& trace);

// parameter,value,algorithm,final_mean_regret,final_median_regret
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

}  // namespace momlab
