#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "midpoint/mappings.hpp"
#include "midpoint/solver.hpp"
#include "midpoint/space.hpp"

namespace midpoint {

/// Finite-sample check of <(I - f)p, J(x - p)> >= 0 over x in F(T).
struct VICertificate {
  Vector p;
  std::vector<Vector> samples{};
  std::vector<double> values{};
  double min_value = 0.0;
  std::size_t argmin = 0;
  double tolerance = 0.0;
  bool holds = false;
};

/// 1e-9 (1 + |p|)(1 + max |x - p|).
double default_vi_tolerance(const Vector& p, const std::vector<Vector>& samples,
                            NormSpec norm_spec = {});

/// Every sample must satisfy |T x - x| <= 1e-12, otherwise rejected-sample.
VICertificate check_vi(const Vector& p, const Contraction& f, const Mapping& T,
                       const std::vector<Vector>& fixed_samples, NormSpec norm_spec = {},
                       std::optional<double> tolerance = std::nullopt);

/// (0, 0) followed by count - 1 seeded points with u1 u2 < 0 drawn from
/// [-radius, radius]^2.
std::vector<Vector> sample_fixed_set_flip(std::size_t count, std::uint64_t seed,
                                          double radius = 2.0);

/// Least-squares slope of log r_n against log n (n = index + 1) over the
/// positive entries. Needs at least five of them.
double estimate_rate(std::span<const double> residuals);

/// Iterate bound max{|x1 - p|, |f(p) - p| / (1 - alpha - epsilon)}.
struct BoundednessReport {
  double bound = 0.0;
  double max_distance = 0.0;
  long worst_n = 0;
  bool holds = false;
};

BoundednessReport check_boundedness(const Trace& trace, const Vector& p, const Contraction& f,
                                    double epsilon, NormSpec norm_spec = {},
                                    double slack = 1e-9);

struct SchemeOutcome {
  SchemeKind kind;
  std::optional<Trace> trace{};
  std::string error{};
  std::vector<double> step_norms{};
  /// Steps taken before step_norm first fell to each threshold.
  std::vector<std::optional<long>> iterations_to{};
  std::optional<double> rate{};

  bool failed() const noexcept { return !trace.has_value(); }
};

struct ComparisonReport {
  std::vector<double> thresholds{1e-2, 1e-4, 1e-6};
  /// Ordered by scheme name.
  std::vector<SchemeOutcome> outcomes;

  bool any_failed() const noexcept;
  /// n, then one step_norm column per scheme (header "NAME:failed" for
  /// failed runs); cells are empty past the end of a trace.
  std::string to_csv() const;
  std::string to_markdown() const;
};

/// Label used for a scheme kind in reports ("AGVIM", or "AGVIM/T" when the
/// power flag differs from the family default).
std::string scheme_label(const SchemeKind& kind);

/// Runs every scheme on the same mapping, contraction, x1, tolerances and
/// one shared tabulation of the schedule. Failures are recorded per scheme.
ComparisonReport compare_schemes(const SolverConfig& base, const std::vector<SchemeKind>& schemes);

}  // namespace midpoint
