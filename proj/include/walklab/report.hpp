#pragma once

#include <string>
#include <vector>

#include "walklab/bound_check.hpp"
#include "walklab/coalescing.hpp"
#include "walklab/meeting.hpp"

namespace walklab {

// %.12g — diffable goldens without drowning in rounding noise.
std::string fmt_sig(double v, int sig = 12);

// RFC 4180: comma separated, CRLF line endings, quoting only when needed.
std::string csv_line(const std::vector<std::string>& fields);

// Columns: name,graph_label,x,t,lhs,rhs,margin,pass. x/t print empty at -1.
std::string bound_checks_csv(const std::vector<BoundCheck>& checks);

// Columns: graph_label,kind,t,probability,bound,margin,pass; rows ordered by
// (kind, t, index).
std::string survivals_csv(std::vector<SurvivalResult> rows);

// Simulation report object; deterministic bytes for fixed inputs.
std::string simulation_report_json(const std::string& graph_label, int n,
                                   const CoalescenceEstimate& est);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

} // namespace walklab
