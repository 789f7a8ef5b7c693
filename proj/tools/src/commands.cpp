#include "midpoint/cli/commands.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "midpoint/cli/config.hpp"
#include "midpoint/cli/csv.hpp"
#include "midpoint/cli/table1.hpp"
#include "midpoint/error.hpp"

namespace midpoint::cli {

namespace fs = std::filesystem;

namespace {

fs::path output_dir(const ExperimentConfig& cfg, const CommandOptions& opts) {
  fs::path dir = opts.out_dir.value_or(fs::path(cfg.output));
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << content;
}

std::string show(const Vector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + format_full(v[i]);
  return s + ")";
}

// Runs `body`, mapping configuration and library errors to exit code 1.
template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitError;
}

}  // namespace

int cmd_run(const fs::path& config_path, const CommandOptions& opts, std::ostream& out,
            std::ostream& err) {
  return guarded(err, [&] {
    const ExperimentConfig cfg = load_config(config_path);
    if (cfg.schemes.size() > 1) {
      err << "warning: run uses only the first scheme (" << cfg.schemes.front() << ")\n";
    }
    const SolverConfig solver = build_solver_config(cfg, cfg.schemes.front());
    spdlog::info("run: scheme {} from {}", cfg.schemes.front(), show(solver.x1));
    const Trace trace = run(solver);

    const fs::path csv = output_dir(cfg, opts) / "trace.csv";
    std::ofstream f(csv, std::ios::binary);
    write_trace_csv(f, trace);
    f.close();

    const bool converged = trace.status == RunStatus::converged;
    out << cfg.schemes.front() << ": " << (converged ? "converged" : "max_outer reached")
        << " after " << trace.rows.size() << " iterations; step_norm="
        << format_full(trace.rows.back().step_norm) << " res_T=" << format_full(trace.rows.back().res_T)
        << " res_Tn=" << format_full(trace.rows.back().res_Tn) << " x=" << show(*trace.final_x)
        << " -> " << csv.string() << "\n";
    return converged ? kExitOk : kExitIncomplete;
  });
}

int cmd_validate_schedule(const fs::path& config_path, const CommandOptions& opts,
                          std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ExperimentConfig cfg = load_config(config_path);
    const Schedule sched = build_schedule(cfg.schedule);
    const Contraction f = build_contraction(cfg.contraction);
    ValidationOptions vopts;
    vopts.alpha = f.alpha;
    vopts.normal_structure = cfg.normal_structure;
    const ValidationReport r = validate(sched, opts.horizon, vopts);

    out << fmt::format("schedule family={} horizon={}\n", to_string(sched.family()), r.horizon);
    out << fmt::format("{:<22} {:<8} {:>24} {:>8} {:>10}  {}\n", "check", "verdict", "value", "n",
                       "holds_from", "note");
    auto line = [&](const std::string& name, const ConditionResult& c) {
      out << fmt::format("{:<22} {:<8} {:>24} {:>8} {:>10}  {}\n", name, to_string(c.verdict),
                         format_full(c.value), c.n,
                         c.first_holding_n ? std::to_string(*c.first_holding_n) : "-", c.note);
    };
    line("(i) lim a_n = 0", r.condition_i);
    line("(ii) sum a_n = inf", r.condition_ii);
    line("(iii) (k^2-1)/a -> 0", r.condition_iii);
    line("simplex a+b+c = 1", r.simplex);
    line("wellposed q_n < 1", r.wellposed);
    line("sup k_n <= N^(1/2)", r.normal_structure_bound);
    out << "ratio growth exponent (tail): " << format_full(r.ratio_growth_exponent) << "\n";
    if (!r.open_interval_exceptions.empty()) {
      out << "note: a_n or c_n on the boundary of (0,1) at " << r.open_interval_exceptions.size()
          << " index(es), first n=" << r.open_interval_exceptions.front() << "\n";
    }
    if (r.normal_structure_bound.verdict == Verdict::warn) {
      err << fmt::format("warning: sup k_n = {} (n={}) exceeds N^(1/2) = {}\n",
                         format_full(r.normal_structure_bound.value), r.normal_structure_bound.n,
                         format_full(std::sqrt(cfg.normal_structure)));
    }
    const bool ok = r.accepted();
    out << (ok ? "schedule accepted" : "schedule rejected") << "\n";
    return ok ? kExitOk : kExitCheckFailed;
  });
}

int cmd_compare(const fs::path& config_path, const CommandOptions& opts, std::ostream& out,
                std::ostream& err) {
  return guarded(err, [&] {
    const ExperimentConfig cfg = load_config(config_path);
    std::vector<std::string> names = opts.schemes.empty() ? cfg.schemes : opts.schemes;
    std::vector<std::string> unique;
    for (const auto& name : names) {
      if (std::find(unique.begin(), unique.end(), name) != unique.end()) {
        err << "warning: duplicate scheme '" << name << "' ignored\n";
        continue;
      }
      unique.push_back(name);
    }
    if (unique.size() < 2) throw ConfigError("compare needs at least two distinct schemes");
    std::vector<SchemeKind> kinds;
    for (const auto& name : unique) kinds.push_back(build_scheme(name));

    const SolverConfig base = build_solver_config(cfg, unique.front());
    const ComparisonReport report = compare_schemes(base, kinds);

    const fs::path dir = output_dir(cfg, opts);
    write_file(dir / "compare.csv", report.to_csv());
    const std::string md = report.to_markdown();
    write_file(dir / "compare.md", md);
    out << md;
    for (const auto& o : report.outcomes) {
      if (o.failed()) err << "scheme " << scheme_label(o.kind) << " failed: " << o.error << "\n";
    }
    out << "-> " << (dir / "compare.csv").string() << "\n";
    return report.any_failed() ? kExitIncomplete : kExitOk;
  });
}

int cmd_reproduce_table1(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Table1Result result = reproduce_table1();
    const fs::path dir = opts.out_dir.value_or(fs::path("table1_out"));
    fs::create_directories(dir);
    const std::string md = table1_markdown(result);
    write_file(dir / "table1.md", md);
    write_file(dir / "table1.csv", table1_csv(result));
    for (std::size_t i = 0; i < result.runs.size(); ++i) {
      std::ofstream f(dir / fmt::format("trace_{}.csv", i + 1), std::ios::binary);
      write_trace_csv(f, result.runs[i].trace);
    }
    out << md;
    return kExitOk;
  });
}

int cmd_verify_mapping(const fs::path& config_path, const CommandOptions& opts, std::ostream& out,
                       std::ostream& err) {
  return guarded(err, [&] {
    const ExperimentConfig cfg = load_config(config_path);
    const auto seed = opts.seed ? opts.seed : cfg.seed;
    if (!seed) throw ConfigError("verify-mapping needs an explicit seed (--seed or 'seed')");
    const Mapping T = build_mapping(cfg.mapping);
    const EnvelopeReport r =
        verify_envelope(T, cfg.envelope_horizon, static_cast<std::size_t>(cfg.envelope_samples),
                        *seed, SampleDomain{}, NormSpec{cfg.norm_p});
    out << fmt::format("mapping={} n_max={} pairs={} skipped={} seed={}\n", T.name(),
                       cfg.envelope_horizon, r.pairs_checked, r.pairs_skipped, *seed);
    out << "max excess |T^n u - T^n v|/|u - v| - k_n = " << format_full(r.max_excess)
        << " at n=" << r.worst_n;
    if (r.worst_u && r.worst_v) out << " u=" << show(*r.worst_u) << " v=" << show(*r.worst_v);
    out << "\n" << (r.passed ? "envelope holds" : "envelope VIOLATED") << "\n";
    return r.passed ? kExitOk : kExitCheckFailed;
  });
}

}  // namespace midpoint::cli
