#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "tcboost/booster.hpp"
#include "tcboost/cascade.hpp"

namespace tcboost {

/// CSV writers for the toolkit's tabular outputs. All numbers use '.' as the
/// decimal separator and LF line endings; an optional `config_echo` line is
/// emitted first as a '#' comment for provenance.

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace, const std::string& config_echo = "");

void write_node_report_csv(std::ostream& out, const NodeReport& report, const std::string& config_echo = "");

void write_roc_csv(std::ostream& out, const std::vector<RocRow>& roc, const std::string& config_echo = "");

struct ExitNormality {
  int exit_index = 0;
  int prefix = 0;
  bool too_few = false;  // fewer than 8 surviving positives
  NormalityResult result;
};

void write_normality_csv(std::ostream& out, const std::vector<ExitNormality>& blocks,
                         const std::string& config_echo = "");

/// Full-precision decimal rendering ("%.17g").
std::string format_double(double value);

}  // namespace tcboost
