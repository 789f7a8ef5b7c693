#include "midpoint/cli/table1.hpp"

#include <sstream>

#include <fmt/format.h>

#include "midpoint/cli/csv.hpp"

namespace midpoint::cli {

namespace {

std::string show(const Vector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += fmt::format("{:.6g}", v[i]);
  }
  return s + ")";
}

const Vector& iterate(const Trace& trace, long k) {
  if (k <= static_cast<long>(trace.rows.size())) return trace.rows[static_cast<std::size_t>(k - 1)].x;
  return *trace.final_x;
}

}  // namespace

std::vector<Vector> table1_fixed_samples() {
  return {Vector{0.0, 0.0}, Vector{1.0, -1.0}, Vector{-1.0, 1.0},
          Vector{2.0, -1.0}, Vector{-0.5, 3.0}, Vector{0.25, -0.125}};
}

SolverConfig table1_config(const Vector& x1) {
  return SolverConfig{
      .scheme = SchemeKind::of(Scheme::AGVIM),
      .mapping = make_flip_map(),
      .contraction = make_contraction_half(),
      .schedule = make_paper_schedule(),
      .x1 = x1,
      .max_outer = 100'000,
      .tol_step = 1e-8,
      .min_outer = kTable1Rows + 1,
  };
}

Table1Result reproduce_table1() {
  Table1Result result;
  result.fixed_samples = table1_fixed_samples();
  const std::vector<std::pair<Vector, Vector>> columns = {
      {Vector{0.0, 1.0 / 3.0}, Vector{1.0, -1.0}},
      {Vector{0.5, 1.0}, Vector{0.0, 0.0}},
      {Vector{-2.0, 1.0}, Vector{-1.0, 1.0}},
  };
  for (const auto& [x1, labelled] : columns) {
    const SolverConfig cfg = table1_config(x1);
    Trace trace = run(cfg);
    const Vector p_hat = *trace.final_x;
    std::vector<double> step, dist;
    for (long n = 1; n <= kTable1Rows; ++n) {
      step.push_back(trace.rows[static_cast<std::size_t>(n - 1)].step_norm);
      dist.push_back(distance(iterate(trace, n + 1), p_hat));
    }
    auto vi_final = check_vi(p_hat, cfg.contraction, cfg.mapping, result.fixed_samples);
    auto vi_labelled = check_vi(labelled, cfg.contraction, cfg.mapping, result.fixed_samples);
    result.runs.push_back(Table1Run{x1, labelled, std::move(trace), std::move(step),
                                    std::move(dist), std::move(vi_final),
                                    std::move(vi_labelled)});
  }
  return result;
}

std::optional<long> settles_at_or_below(const std::vector<double>& rows, double threshold) {
  std::optional<long> from;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] <= threshold) {
      if (!from) from = static_cast<long>(i + 1);
    } else {
      from.reset();
    }
  }
  return from;
}

std::optional<long> rounds_to_zero_from(const std::vector<double>& rows) {
  std::vector<double> rounded;
  for (double v : rows) rounded.push_back(format_4dp(v) == "0.0000" ? 0.0 : 1.0);
  return settles_at_or_below(rounded, 0.0);
}

std::string table1_markdown(const Table1Result& result) {
  std::ostringstream md;
  auto table = [&](const std::string& title, auto pick) {
    md << "### " << title << "\n\n| n |";
    for (const auto& r : result.runs) md << " x1 = " << show(r.x1) << " |";
    md << "\n|---|";
    for (std::size_t i = 0; i < result.runs.size(); ++i) md << "---|";
    md << "\n";
    for (long n = 1; n <= kTable1Rows; ++n) {
      md << "| " << n << " |";
      for (const auto& r : result.runs) md << " " << format_4dp(pick(r)[static_cast<std::size_t>(n - 1)]) << " |";
      md << "\n";
    }
    md << "\n";
    for (const auto& r : result.runs) {
      const auto& rows = pick(r);
      const auto below = settles_at_or_below(rows, 1.1e-3);
      const auto zero = rounds_to_zero_from(rows);
      md << "- x1 = " << show(r.x1) << ": <= 1.1e-3 from n = "
         << (below ? std::to_string(*below) : std::string("never")) << ", 0.0000 from n = "
         << (zero ? std::to_string(*zero) : std::string("never")) << "\n";
    }
    md << "\n";
  };

  md << "## Flip map, AGVIM, f(x) = x/2, a_n = 1/n\n\n";
  table("|x_{n+1} - x_n|", [](const Table1Run& r) -> const std::vector<double>& { return r.step; });
  table("|x_{n+1} - p_hat| (p_hat = final iterate)",
        [](const Table1Run& r) -> const std::vector<double>& { return r.distance_to_final; });

  md << "### Runs\n\n";
  for (const auto& r : result.runs) {
    md << "- x1 = " << show(r.x1) << ": "
       << (r.trace.status == RunStatus::converged ? "converged" : "stopped at max_outer")
       << " after " << r.trace.rows.size() << " iterations, p_hat = " << show(*r.trace.final_x)
       << ", final step " << fmt::format("{:.3e}", r.trace.rows.back().step_norm) << "\n";
  }

  md << "\n### Variational inequality <(I - f)p, J(x - p)> >= 0 over sampled F(T)\n\n";
  md << "Samples:";
  for (const auto& s : result.fixed_samples) md << " " << show(s);
  md << "\n\n";
  auto line = [&](const std::string& what, const VICertificate& c) {
    md << "- " << what << " p = " << show(c.p) << ": " << (c.holds ? "holds" : "VIOLATED")
       << ", min value " << fmt::format("{:.17g}", c.min_value) << " at sample "
       << show(c.samples[c.argmin]) << " (tolerance " << fmt::format("{:.3g}", c.tolerance)
       << ")\n    values:";
    for (std::size_t i = 0; i < c.values.size(); ++i) {
      md << " " << show(c.samples[i]) << " -> " << fmt::format("{:.6g}", c.values[i]) << ";";
    }
    md << "\n";
  };
  for (const auto& r : result.runs) {
    md << "\nx1 = " << show(r.x1) << "\n";
    line("computed limit", r.vi_final);
    md << "    |(I - f)p| at the computed limit: "
       << fmt::format("{:.3e}", norm(r.vi_final.p - make_contraction_half()(r.vi_final.p)))
       << " (finite-precision approximation of the limit)\n";
    line("labelled limit", r.vi_labelled);
    if (!r.vi_labelled.holds) {
      md << "  discrepancy: the labelled limit " << show(r.labelled_limit)
         << " is not the point selected by f(x) = x/2; the runs converge to "
         << show(*r.trace.final_x) << "\n";
    }
  }
  return md.str();
}

std::string table1_csv(const Table1Result& result) {
  std::string out = "n";
  for (std::size_t i = 0; i < result.runs.size(); ++i) {
    out += fmt::format(",step_norm_{0},dist_final_{0}", i + 1);
  }
  out += "\n";
  for (long n = 1; n <= kTable1Rows; ++n) {
    out += std::to_string(n);
    for (const auto& r : result.runs) {
      const auto i = static_cast<std::size_t>(n - 1);
      out += "," + format_full(r.step[i]) + "," + format_full(r.distance_to_final[i]);
    }
    out += "\n";
  }
  return out;
}

}  // namespace midpoint::cli
