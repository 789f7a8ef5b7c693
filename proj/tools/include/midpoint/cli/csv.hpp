#pragma once

#include <ostream>
#include <string>

#include "midpoint/solver.hpp"

namespace midpoint::cli {

/// 17 significant digits; round-trips every double.
std::string format_full(double value);
/// Fixed 4-decimal rendering used by the human-readable tables.
std::string format_4dp(double value);

/// Header: n, x_0..x_{d-1}, step_norm, res_T, res_Tn, inner_iters, q_n,
/// a_n, b_n, c_n, k_n. Comma-separated, LF line endings.
void write_trace_csv(std::ostream& out, const Trace& trace);

}  // namespace midpoint::cli
