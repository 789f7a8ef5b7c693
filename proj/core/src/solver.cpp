#include "midpoint/solver.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "midpoint/error.hpp"

namespace midpoint {

std::string_view to_string(Scheme scheme) noexcept {
  switch (scheme) {
    case Scheme::IMR: return "IMR";
    case Scheme::VIM: return "VIM";
    case Scheme::GVIM: return "GVIM";
    case Scheme::AGVIM: return "AGVIM";
    case Scheme::AVIM63: return "AVIM63";
  }
  return "AGVIM";
}

std::optional<Scheme> parse_scheme(std::string_view name) noexcept {
  for (Scheme s : {Scheme::IMR, Scheme::VIM, Scheme::GVIM, Scheme::AGVIM, Scheme::AVIM63}) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

SchemeKind SchemeKind::of(Scheme scheme) noexcept {
  return {scheme, scheme == Scheme::AGVIM || scheme == Scheme::AVIM63};
}

StepWeights step_weights(const SolverConfig& cfg, long n) {
  const ScheduleValues v = cfg.schedule.at(n);
  if (!cfg.force) {
    if (!(std::abs(v.a + v.b + v.c - 1.0) <= 1e-12)) {
      throw Error(ErrorCode::invalid_schedule, "a_n + b_n + c_n != 1", n);
    }
  }
  StepWeights w;
  // T alone is Lipschitz with k_1; T^n with k_n.
  w.lipschitz = cfg.scheme.use_power ? v.k : cfg.schedule.k(1);
  switch (cfg.scheme.scheme) {
    case Scheme::IMR:
      w.anchor = 1.0 - v.a;
      w.mapping = v.a;
      break;
    case Scheme::VIM:
    case Scheme::AVIM63:
      w.contraction = v.a;
      w.mapping = 1.0 - v.a;
      break;
    case Scheme::GVIM:
    case Scheme::AGVIM:
      w.contraction = v.a;
      w.anchor = v.b;
      w.mapping = v.c;
      break;
  }
  return w;
}

namespace {

Mapping::Operator step_operator(const SolverConfig& cfg, long n) {
  try {
    return cfg.mapping.power(cfg.scheme.use_power ? n : 1, cfg.max_power_composition);
  } catch (const Error& e) {
    throw Error(e.code(), e.what(), n);
  }
}

Vector explicit_part(const SolverConfig& cfg, const StepWeights& w, const Vector& x_n) {
  Vector e = w.anchor * x_n;
  if (w.contraction != 0.0) e = w.contraction * cfg.contraction(x_n) + e;
  return e;
}

}  // namespace

StepResult implicit_step(const SolverConfig& cfg, long n, const Vector& x_n,
                         const InnerObserver& observer) {
  if (!x_n.is_finite()) throw Error(ErrorCode::invalid_input, "non-finite iterate", n);
  const StepWeights w = step_weights(cfg, n);
  const double q = w.inner_factor();
  if (!(q < 1.0)) {
    throw Error(ErrorCode::ill_posed,
                "inner contraction factor q_n = " + std::to_string(q) + " >= 1", n);
  }
  const Vector e = explicit_part(cfg, w, x_n);
  if (w.mapping == 0.0) return {e, 0, q, 0.0};

  const auto P = step_operator(cfg, n);
  auto T_omega = [&](const Vector& y) { return e + w.mapping * P(0.5 * (x_n + y)); };

  const double gain = q / (1.0 - q);
  Vector y = x_n;
  double bound = std::numeric_limits<double>::infinity();
  for (long m = 1; m <= cfg.max_inner; ++m) {
    Vector next = T_omega(y);
    if (!next.is_finite()) throw Error(ErrorCode::invalid_input, "inner iterate diverged", n);
    const double diff = distance(next, y, cfg.norm);
    y = std::move(next);
    bound = gain * diff;
    if (observer) observer(m, diff);
    if (bound <= cfg.tol_inner) return {std::move(y), m, q, bound};
  }
  throw Error(ErrorCode::inner_budget_exceeded,
              "inner solve stopped after " + std::to_string(cfg.max_inner) +
                  " iterations with error bound " + std::to_string(bound),
              n);
}

Vector implicit_step_affine_oracle(const Matrix& A, const Vector& b, const SolverConfig& cfg,
                                   long n, const Vector& x_n) {
  if (A.rows() != A.cols() || static_cast<std::size_t>(A.rows()) != b.size() ||
      b.size() != x_n.size()) {
    throw Error(ErrorCode::invalid_input, "affine oracle: dimension mismatch");
  }
  const StepWeights w = step_weights(cfg, n);
  const long m = cfg.scheme.use_power ? n : 1;
  const auto d = A.rows();

  // A^m and sum_{j<m} A^j b by plain repeated multiplication.
  Matrix Am = Matrix::Identity(d, d);
  Eigen::VectorXd shift = Eigen::VectorXd::Zero(d);
  const Eigen::VectorXd be = to_eigen(b);
  for (long j = 0; j < m; ++j) {
    shift = A * shift + be;
    Am = A * Am;
  }

  const Eigen::VectorXd xe = to_eigen(x_n);
  Eigen::VectorXd rhs = to_eigen(explicit_part(cfg, w, x_n));
  rhs += w.mapping * (0.5 * (Am * xe) + shift);
  const Matrix lhs = Matrix::Identity(d, d) - 0.5 * w.mapping * Am;

  Eigen::FullPivLU<Matrix> lu(lhs);
  if (!lu.isInvertible()) throw Error(ErrorCode::singular_system, "affine oracle system", n);
  return from_eigen(lu.solve(rhs));
}

Trace run(const SolverConfig& cfg) {
  if (cfg.x1.size() != cfg.mapping.dim()) {
    throw Error(ErrorCode::invalid_input, "x1 dimension does not match the mapping");
  }
  require_finite(cfg.x1, "x1");
  cfg.norm.validate();
  if (cfg.max_inner < 1 || cfg.max_outer < 1) {
    throw Error(ErrorCode::invalid_input, "max_inner and max_outer must be >= 1");
  }
  if (!(cfg.tol_inner < cfg.tol_step)) {
    throw Error(ErrorCode::invalid_input, "tol_inner must be strictly below tol_step");
  }

  Trace trace;
  trace.rows.reserve(static_cast<std::size_t>(std::min(cfg.max_outer, 100'000L)));
  Vector x = cfg.x1;
  for (long n = 1; n <= cfg.max_outer; ++n) {
    StepResult step = implicit_step(cfg, n, x);

    double res_Tn = std::numeric_limits<double>::quiet_NaN();
    try {
      res_Tn = distance(x, cfg.mapping.apply_power(n, x, cfg.max_power_composition), cfg.norm);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::power_cap_exceeded) throw;
    }
    const double step_norm = distance(step.x_next, x, cfg.norm);
    const double res_T = distance(x, cfg.mapping.apply(x), cfg.norm);
    const bool done = step_norm <= cfg.tol_step && n >= cfg.min_outer;
    trace.rows.push_back(TraceRow{.n = n,
                                  .x = std::move(x),
                                  .step_norm = step_norm,
                                  .res_T = res_T,
                                  .res_Tn = res_Tn,
                                  .inner_iters = step.inner_iters,
                                  .q = step.q,
                                  .schedule = cfg.schedule.at(n)});
    x = std::move(step.x_next);
    if (done) {
      trace.status = RunStatus::converged;
      break;
    }
  }
  trace.final_x = std::move(x);
  return trace;
}

std::vector<ResidualPoint> residual_profile(const Trace& trace) {
  if (trace.rows.empty()) throw Error(ErrorCode::invalid_input, "empty trace");
  std::vector<ResidualPoint> out;
  out.reserve(trace.rows.size());
  for (const auto& r : trace.rows) out.push_back({r.n, r.step_norm, r.res_T, r.res_Tn});
  return out;
}

}  // namespace midpoint
