#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sharedctl/sim.hpp"

namespace sharedctl {

// Fixed trace.csv header, one name per column.
const std::vector<std::string>& trace_columns();

// Every number is written with %.12g; missing neighbors and undefined gaps as "nan".
void write_trace_csv(std::ostream& os, const std::vector<TraceRecord>& trace);
void write_summary_json(std::ostream& os, const Summary& summary);

// One JSON object per line: the triangulation and corridor of step k.
void write_geometry_line(std::ostream& os, int k, const SafeArea& area);

// risk-eval: JSON request in, RiskReport JSON out. Throws ConfigError on a
// malformed request.
std::string evaluate_risk_json(const std::string& request);

std::string format_number(double v);

}  // namespace sharedctl
