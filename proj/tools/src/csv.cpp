#include "midpoint/cli/csv.hpp"

#include <fmt/format.h>

namespace midpoint::cli {

std::string format_full(double value) { return fmt::format("{:.17g}", value); }

std::string format_4dp(double value) {
  std::string s = fmt::format("{:.4f}", value);
  if (s == "-0.0000") s = "0.0000";
  return s;
}

void write_trace_csv(std::ostream& out, const Trace& trace) {
  const std::size_t dim = trace.rows.empty() ? 0 : trace.rows.front().x.size();
  out << "n";
  for (std::size_t i = 0; i < dim; ++i) out << ",x_" << i;
  out << ",step_norm,res_T,res_Tn,inner_iters,q_n,a_n,b_n,c_n,k_n\n";
  for (const auto& r : trace.rows) {
    out << r.n;
    for (double v : r.x) out << ',' << format_full(v);
    out << ',' << format_full(r.step_norm) << ',' << format_full(r.res_T) << ','
        << format_full(r.res_Tn) << ',' << r.inner_iters << ',' << format_full(r.q) << ','
        << format_full(r.schedule.a) << ',' << format_full(r.schedule.b) << ','
        << format_full(r.schedule.c) << ',' << format_full(r.schedule.k) << '\n';
  }
}

}  // namespace midpoint::cli
