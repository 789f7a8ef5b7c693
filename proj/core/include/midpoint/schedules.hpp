#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace midpoint {

enum class ScheduleFamily { paper, power, custom };

std::string_view to_string(ScheduleFamily family) noexcept;

/// (a_n, b_n, c_n, k_n) at one index.
struct ScheduleValues {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double k = 1.0;

  friend bool operator==(const ScheduleValues&, const ScheduleValues&) = default;
};

/// Parameter sequences {a_n}, {b_n}, {c_n}, {k_n}, indexed from n = 1.
///
/// Table-backed schedules have a finite length; asking past it throws
/// invalid-schedule.
class Schedule {
 public:
  using Sequence = std::function<double(long)>;

  Schedule(ScheduleFamily family, Sequence a, Sequence b, Sequence c, Sequence k,
           std::optional<long> length = std::nullopt);

  ScheduleValues at(long n) const;
  double a(long n) const { return at(n).a; }
  double b(long n) const { return at(n).b; }
  double c(long n) const { return at(n).c; }
  double k(long n) const { return at(n).k; }

  ScheduleFamily family() const noexcept { return family_; }
  std::optional<long> length() const noexcept { return length_; }
  /// Exponent s of a power-law family a_n = n^-s.
  std::optional<double> power_exponent() const noexcept { return power_exponent_; }

  /// epsilon in (0, 1 - alpha) for the boundedness bound; defaults to (1 - alpha) / 2.
  double epsilon_for(double alpha) const;
  Schedule with_epsilon(double epsilon) const;

  /// Same a_n, replaced {k_n}.
  Schedule with_envelope(Sequence k) const;
  /// b_n = 0 and c_n = 1 - a_n; keeps a_n and k_n.
  Schedule with_zero_b() const;

 private:
  friend Schedule make_power_schedule(double s, double b_const);

  ScheduleFamily family_;
  Sequence a_, b_, c_, k_;
  std::optional<long> length_;
  std::optional<double> power_exponent_;
  std::optional<double> epsilon_;
};

/// a_n = 1/n, b_n = (n-1)/(n(n+1)), c_n = (n-1)/(n+1), k_n = 1 + 2^-n.
Schedule make_paper_schedule();

/// a_n = n^-s, b_n = b_const (1 - a_n), c_n = 1 - a_n - b_n, k_n = 1.
Schedule make_power_schedule(double s, double b_const);

/// Explicit rows for n = 1..rows.size().
Schedule make_table_schedule(std::vector<ScheduleValues> rows);

/// Evaluates every sequence once for n = 1..horizon and freezes the values.
Schedule tabulate(const Schedule& schedule, long horizon);

/// q_n = c_n k_n / 2, the Lipschitz constant of the implicit step map.
double inner_contraction_factor(const Schedule& schedule, long n);

enum class Verdict { pass, fail, unknown, warn };

std::string_view to_string(Verdict verdict) noexcept;

struct ConditionResult {
  Verdict verdict = Verdict::unknown;
  /// Witness value and the index it was observed at.
  double value = 0.0;
  long n = 0;
  /// First index from which the checked inequality holds through the horizon.
  std::optional<long> first_holding_n;
  std::string note;
};

struct ValidationOptions {
  double alpha = 0.5;
  /// Normal structure coefficient N(E); sqrt(2) for Hilbert space.
  double normal_structure = std::sqrt(2.0);
  /// Condition (i) requires a_H at or below this.
  double limit_threshold = 1e-2;
  /// Condition (iii) requires (k_H^2 - 1)/a_H at or below this.
  double ratio_tolerance = 1e-3;
  double simplex_tolerance = 1e-12;
};

struct ValidationReport {
  long horizon = 0;
  ConditionResult condition_i;
  ConditionResult condition_ii;
  ConditionResult condition_iii;
  ConditionResult simplex;
  ConditionResult wellposed;
  ConditionResult normal_structure_bound;
  /// Log-log slope of (k_n^2 - 1)/a_n over the tail (NaN when it is zero there).
  double ratio_growth_exponent = 0.0;
  /// Strict open-interval membership a,c in (0,1) fails at these indices
  /// (e.g. n = 1 of the paper schedule); informational.
  std::vector<long> open_interval_exceptions;

  /// (i), (iii), simplex and wellposed pass; (ii) passes or is unknown.
  bool accepted() const noexcept;
};

/// Checks the schedule over n = 1..horizon (clipped to a table's length).
/// Limit conditions are judged on the tail half of the horizon.
ValidationReport validate(const Schedule& schedule, long horizon,
                          const ValidationOptions& options = {});

}  // namespace midpoint
