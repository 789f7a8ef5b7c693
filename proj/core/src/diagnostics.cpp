#include "midpoint/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <random>
#include <sstream>

#include <fmt/format.h>

#include "midpoint/error.hpp"

namespace midpoint {

double default_vi_tolerance(const Vector& p, const std::vector<Vector>& samples,
                            NormSpec norm_spec) {
  double spread = 0.0;
  for (const auto& x : samples) spread = std::max(spread, distance(x, p, norm_spec));
  return 1e-9 * (1.0 + norm(p, norm_spec)) * (1.0 + spread);
}

VICertificate check_vi(const Vector& p, const Contraction& f, const Mapping& T,
                       const std::vector<Vector>& fixed_samples, NormSpec norm_spec,
                       std::optional<double> tolerance) {
  if (fixed_samples.empty()) throw Error(ErrorCode::invalid_input, "no fixed-point samples");
  std::string offenders;
  for (std::size_t i = 0; i < fixed_samples.size(); ++i) {
    const auto& x = fixed_samples[i];
    if (!(distance(T.apply(x), x, norm_spec) <= 1e-12)) {
      if (!offenders.empty()) offenders += ", ";
      offenders += "#" + std::to_string(i);
    }
  }
  if (!offenders.empty()) {
    throw Error(ErrorCode::rejected_sample, "samples not fixed by T: " + offenders);
  }

  const Vector residual = p - f(p);
  VICertificate cert{.p = p, .samples = fixed_samples};
  cert.values.reserve(fixed_samples.size());
  cert.min_value = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < fixed_samples.size(); ++i) {
    const double v = inner(residual, duality_map(fixed_samples[i] - p, norm_spec));
    cert.values.push_back(v);
    if (v < cert.min_value) {
      cert.min_value = v;
      cert.argmin = i;
    }
  }
  cert.tolerance = tolerance.value_or(default_vi_tolerance(p, fixed_samples, norm_spec));
  cert.holds = cert.min_value >= -cert.tolerance;
  return cert;
}

std::vector<Vector> sample_fixed_set_flip(std::size_t count, std::uint64_t seed, double radius) {
  if (count < 1) throw Error(ErrorCode::invalid_input, "count must be >= 1");
  const Mapping T = make_flip_map();
  std::vector<Vector> out;
  out.reserve(count);
  out.push_back(Vector{0.0, 0.0});
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> mag(0.0, radius);
  std::bernoulli_distribution first_positive(0.5);
  while (out.size() < count) {
    const double s = first_positive(rng) ? 1.0 : -1.0;
    Vector u{s * mag(rng), -s * mag(rng)};
    if (!in_flip_fixed_region(u) || !(T.apply(u) == u)) continue;
    out.push_back(std::move(u));
  }
  return out;
}

double estimate_rate(std::span<const double> residuals) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t m = 0;
  for (std::size_t i = 0; i < residuals.size(); ++i) {
    const double r = residuals[i];
    if (!(r > 0.0) || !std::isfinite(r)) continue;
    const double lx = std::log(static_cast<double>(i + 1));
    const double ly = std::log(r);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++m;
  }
  if (m < 5) {
    throw Error(ErrorCode::insufficient_data,
                "rate estimate needs >= 5 positive residuals, got " + std::to_string(m));
  }
  const double mm = static_cast<double>(m);
  return (mm * sxy - sx * sy) / (mm * sxx - sx * sx);
}

BoundednessReport check_boundedness(const Trace& trace, const Vector& p, const Contraction& f,
                                    double epsilon, NormSpec norm_spec, double slack) {
  if (trace.rows.empty()) throw Error(ErrorCode::invalid_input, "empty trace");
  if (!(epsilon > 0.0 && epsilon < 1.0 - f.alpha)) {
    throw Error(ErrorCode::invalid_input, "epsilon must lie in (0, 1 - alpha)");
  }
  BoundednessReport r;
  r.bound = std::max(distance(trace.rows.front().x, p, norm_spec),
                     distance(f(p), p, norm_spec) / (1.0 - f.alpha - epsilon));
  auto visit = [&](long n, const Vector& x) {
    const double d = distance(x, p, norm_spec);
    if (d > r.max_distance) {
      r.max_distance = d;
      r.worst_n = n;
    }
  };
  for (const auto& row : trace.rows) visit(row.n, row.x);
  if (trace.final_x) visit(trace.rows.back().n + 1, *trace.final_x);
  r.holds = r.max_distance <= r.bound + slack;
  return r;
}

std::string scheme_label(const SchemeKind& kind) {
  std::string label(to_string(kind.scheme));
  const bool native = SchemeKind::of(kind.scheme).use_power;
  if (kind.use_power != native) label += kind.use_power ? "/Tn" : "/T";
  return label;
}

bool ComparisonReport::any_failed() const noexcept {
  return std::any_of(outcomes.begin(), outcomes.end(),
                     [](const SchemeOutcome& o) { return o.failed(); });
}

std::string ComparisonReport::to_csv() const {
  std::string out = "n";
  std::size_t rows = 0;
  for (const auto& o : outcomes) {
    out += "," + scheme_label(o.kind) + (o.failed() ? ":failed" : "");
    rows = std::max(rows, o.step_norms.size());
  }
  out += "\n";
  for (std::size_t i = 0; i < rows; ++i) {
    out += std::to_string(i + 1);
    for (const auto& o : outcomes) {
      out += ",";
      if (i < o.step_norms.size()) out += fmt::format("{:.17g}", o.step_norms[i]);
    }
    out += "\n";
  }
  return out;
}

std::string ComparisonReport::to_markdown() const {
  std::ostringstream md;
  md << "| scheme | status | iterations |";
  for (double t : thresholds) md << " steps to " << fmt::format("{:g}", t) << " |";
  md << " rate |\n|---|---|---|";
  for (std::size_t i = 0; i < thresholds.size(); ++i) md << "---|";
  md << "---|\n";
  for (const auto& o : outcomes) {
    md << "| " << scheme_label(o.kind) << " | ";
    if (o.failed()) {
      md << "failed: " << o.error << " | - |";
      for (std::size_t i = 0; i < thresholds.size(); ++i) md << " - |";
      md << " - |\n";
      continue;
    }
    md << (o.trace->status == RunStatus::converged ? "converged" : "max_outer") << " | "
       << o.step_norms.size() << " |";
    for (const auto& it : o.iterations_to) md << " " << (it ? std::to_string(*it) : "-") << " |";
    md << " " << (o.rate ? fmt::format("{:.3f}", *o.rate) : "-") << " |\n";
  }
  for (std::size_t t = 0; t < thresholds.size(); ++t) {
    const SchemeOutcome* best = nullptr;
    for (const auto& o : outcomes) {
      if (o.failed() || !o.iterations_to[t]) continue;
      if (!best || *o.iterations_to[t] < *best->iterations_to[t]) best = &o;
    }
    md << "\nFirst to reach " << fmt::format("{:g}", thresholds[t]) << ": "
       << (best ? scheme_label(best->kind) : std::string("none"));
  }
  md << "\n";
  return md.str();
}

ComparisonReport compare_schemes(const SolverConfig& base, const std::vector<SchemeKind>& schemes) {
  if (schemes.size() < 2) throw Error(ErrorCode::invalid_input, "compare needs >= 2 schemes");

  SolverConfig shared = base;
  shared.schedule = tabulate(base.schedule, base.max_outer);

  ComparisonReport report;
  std::vector<std::future<SchemeOutcome>> jobs;
  jobs.reserve(schemes.size());
  for (const auto& kind : schemes) {
    jobs.push_back(std::async(std::launch::async, [&shared, kind, &report] {
      SchemeOutcome o{.kind = kind};
      SolverConfig cfg = shared;
      cfg.scheme = kind;
      try {
        o.trace = run(cfg);
      } catch (const std::exception& e) {
        o.error = e.what();
        return o;
      }
      for (const auto& row : o.trace->rows) o.step_norms.push_back(row.step_norm);
      for (double t : report.thresholds) {
        std::optional<long> steps;
        for (const auto& row : o.trace->rows) {
          if (row.step_norm <= t) {
            steps = row.n - 1;
            break;
          }
        }
        o.iterations_to.push_back(steps);
      }
      try {
        o.rate = estimate_rate(o.step_norms);
      } catch (const Error&) {
      }
      return o;
    }));
  }
  for (auto& job : jobs) report.outcomes.push_back(job.get());
  std::stable_sort(report.outcomes.begin(), report.outcomes.end(),
                   [](const SchemeOutcome& l, const SchemeOutcome& r) {
                     return scheme_label(l.kind) < scheme_label(r.kind);
                   });
  return report;
}

}  // namespace midpoint
