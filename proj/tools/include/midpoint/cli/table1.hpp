#pragma once

#include <optional>
#include <string>
#include <vector>

#include "midpoint/diagnostics.hpp"
#include "midpoint/solver.hpp"

namespace midpoint::cli {

inline constexpr long kTable1Rows = 20;

/// One column of the flip-map experiment: AGVIM, f = x/2, paper schedule.
struct Table1Run {
  Vector x1;
  /// Limit point the column is labelled with.
  Vector labelled_limit;
  Trace trace;
  /// Row n: |x_{n+1} - x_n|.
  std::vector<double> step;
  /// Row n: |x_{n+1} - p_hat|, p_hat the final iterate of the converged run.
  std::vector<double> distance_to_final;
  VICertificate vi_final;
  VICertificate vi_labelled;
};

struct Table1Result {
  std::vector<Table1Run> runs;
  std::vector<Vector> fixed_samples;
};

/// Fixed sample of F(T) used by the certificates (no randomness).
std::vector<Vector> table1_fixed_samples();

/// SolverConfig used for each column.
SolverConfig table1_config(const Vector& x1);

Table1Result reproduce_table1();

/// Smallest n0 such that rows n0..end are all <= threshold.
std::optional<long> settles_at_or_below(const std::vector<double>& rows, double threshold);
/// Smallest n0 from which every row prints as 0.0000.
std::optional<long> rounds_to_zero_from(const std::vector<double>& rows);

std::string table1_markdown(const Table1Result& result);
std::string table1_csv(const Table1Result& result);

}  // namespace midpoint::cli
