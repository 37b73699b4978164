#include "tcboost/reports.hpp"

#include <cstdio>

namespace tcboost {

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

namespace {

void echo(std::ostream& out, const std::string& config_echo) {
  if (!config_echo.empty()) out << "# " << config_echo << '\n';
}

}  // namespace

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace, const std::string& config_echo) {
  echo(out, config_echo);
  out << "iteration,primal_obj,dual_obj,edge,r,mu_gap\n";
  for (const TraceRow& row : trace) {
    out << row.iteration << ',' << format_double(row.primal_obj) << ',' << format_double(row.dual_obj) << ','
        << format_double(row.edge) << ',' << format_double(row.r) << ',' << format_double(row.mu_gap) << '\n';
  }
}

void write_node_report_csv(std::ostream& out, const NodeReport& report, const std::string& config_echo) {
  echo(out, config_echo);
  out << "exit_index,prefix_length,d_t,f_t,cumulative_F_dr,cumulative_F_fp\n";
  double f_dr = 1.0, f_fp = 1.0;
  for (const auto& node : report.nodes) {
    f_dr *= node.d;
    f_fp *= node.f;
    out << node.exit_index << ',' << node.prefix << ',' << format_double(node.d) << ',' << format_double(node.f)
        << ',' << format_double(f_dr) << ',' << format_double(f_fp) << '\n';
  }
}

void write_roc_csv(std::ostream& out, const std::vector<RocRow>& roc, const std::string& config_echo) {
  echo(out, config_echo);
  out << "threshold,false_positives,detection_rate\n";
  for (const RocRow& row : roc) {
    out << format_double(row.threshold) << ',' << row.false_positives << ',' << format_double(row.detection_rate)
        << '\n';
  }
}

void write_normality_csv(std::ostream& out, const std::vector<ExitNormality>& blocks,
                         const std::string& config_echo) {
  echo(out, config_echo);
  out << "exit_index,prefix_length,rank,margin,normal_quantile,r_normal,status\n";
  for (const ExitNormality& block : blocks) {
    if (block.too_few) {
      out << block.exit_index << ',' << block.prefix << ",-1,nan,nan,nan,too_few\n";
      continue;
    }
    const char* status = block.result.defined ? "ok" : "undefined";
    const std::string r = format_double(block.result.r_normal);
    int rank = 0;
    for (const auto& [margin, quantile] : block.result.quantile_pairs) {
      out << block.exit_index << ',' << block.prefix << ',' << rank++ << ',' << format_double(margin) << ','
          << format_double(quantile) << ',' << r << ',' << status << '\n';
    }
  }
}

}  // namespace tcboost
