#pragma once

#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "midpoint/mappings.hpp"
#include "midpoint/schedules.hpp"
#include "midpoint/space.hpp"

namespace midpoint {

/// Iteration families, all of the form
///   x_{n+1} = w_f f(x_n) + w_x x_n + w_T P((x_n + x_{n+1}) / 2)
/// with P = T^n or T.
///
///   IMR    (1 - a_n) x_n + a_n T(mid)
///   VIM    a_n f(x_n) + (1 - a_n) T(mid)
///   GVIM   a_n f(x_n) + b_n x_n + c_n T(mid)
///   AGVIM  a_n f(x_n) + b_n x_n + c_n T^n(mid)
///   AVIM63 a_n f(x_n) + (1 - a_n) T^n(mid)
enum class Scheme { IMR, VIM, GVIM, AGVIM, AVIM63 };

std::string_view to_string(Scheme scheme) noexcept;
std::optional<Scheme> parse_scheme(std::string_view name) noexcept;

struct SchemeKind {
  Scheme scheme = Scheme::AGVIM;
  /// Apply the mapping as T^n (true) or as T (false).
  bool use_power = true;

  /// The family with its native power flag (AGVIM, AVIM63 use T^n).
  static SchemeKind of(Scheme scheme) noexcept;

  friend bool operator==(const SchemeKind&, const SchemeKind&) = default;
};

struct SolverConfig {
  SchemeKind scheme;
  Mapping mapping;
  Contraction contraction;
  Schedule schedule;
  Vector x1;
  long max_outer = 10'000;
  /// Stop once |x_{n+1} - x_n| <= tol_step (and n >= min_outer).
  double tol_step = 1e-8;
  long min_outer = 0;
  double tol_inner = 1e-12;
  long max_inner = 10'000;
  /// Largest n for which T^n may be built by n-fold composition.
  long max_power_composition = Mapping::kDefaultCompositionCap;
  NormSpec norm;
  /// Skip the per-step simplex check on the schedule.
  bool force = false;
};

/// Weights of one step and the Lipschitz constant used for T or T^n.
struct StepWeights {
  double contraction = 0.0;
  double anchor = 0.0;
  double mapping = 0.0;
  double lipschitz = 1.0;

  /// Lipschitz constant of the implicit step map, mapping * lipschitz / 2.
  double inner_factor() const noexcept { return mapping * lipschitz / 2.0; }
};

StepWeights step_weights(const SolverConfig& cfg, long n);

struct StepResult {
  Vector x_next;
  long inner_iters = 0;
  double q = 0.0;
  /// A-posteriori bound on |x_next - exact solution| at acceptance.
  double error_bound = 0.0;
};

/// Called with (m, |y_m - y_{m-1}|) after each Picard iteration.
using InnerObserver = std::function<void(long, double)>;

/// Solves x = w_f f(x_n) + w_x x_n + w_T P((x_n + x)/2) by Picard iteration
/// from x_n, stopping once q/(1-q) |y_m - y_{m-1}| <= tol_inner.
/// Throws ill-posed when q >= 1, inner-budget-exceeded past max_inner.
StepResult implicit_step(const SolverConfig& cfg, long n, const Vector& x_n,
                         const InnerObserver& observer = {});

/// Direct solve of the same step for an affine mapping u -> A u + b:
/// (I - (w_T/2) A^m) x = w_f f(x_n) + w_x x_n + w_T (A^m x_n / 2 + b_m),
/// where m = n (power schemes) or 1.
Vector implicit_step_affine_oracle(const Matrix& A, const Vector& b, const SolverConfig& cfg,
                                   long n, const Vector& x_n);

struct TraceRow {
  long n = 0;
  Vector x;  // x_n
  double step_norm = 0.0;  // |x_{n+1} - x_n|
  double res_T = 0.0;      // |x_n - T x_n|
  double res_Tn = 0.0;     // |x_n - T^n x_n|, NaN past the composition cap
  long inner_iters = 0;
  double q = 0.0;
  ScheduleValues schedule;
};

enum class RunStatus { converged, max_outer_reached };

struct Trace {
  std::vector<TraceRow> rows;
  std::optional<Vector> final_x;
  RunStatus status = RunStatus::max_outer_reached;
};

/// Runs the configured scheme from x1. Errors carry the offending n.
Trace run(const SolverConfig& cfg);

struct ResidualPoint {
  long n = 0;
  double step_norm = 0.0;
  double res_T = 0.0;
  double res_Tn = 0.0;
};

std::vector<ResidualPoint> residual_profile(const Trace& trace);

}  // namespace midpoint
