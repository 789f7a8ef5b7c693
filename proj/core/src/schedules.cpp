#include "midpoint/schedules.hpp"

#include <algorithm>
#include <limits>
#include <memory>

#include "midpoint/error.hpp"
#include "midpoint/mappings.hpp"

namespace midpoint {

std::string_view to_string(ScheduleFamily family) noexcept {
  switch (family) {
    case ScheduleFamily::paper: return "paper";
    case ScheduleFamily::power: return "power";
    case ScheduleFamily::custom: return "custom";
  }
  return "custom";
}

std::string_view to_string(Verdict verdict) noexcept {
  switch (verdict) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::unknown: return "unknown";
    case Verdict::warn: return "warn";
  }
  return "unknown";
}

Schedule::Schedule(ScheduleFamily family, Sequence a, Sequence b, Sequence c, Sequence k,
                   std::optional<long> length)
    : family_(family),
      a_(std::move(a)),
      b_(std::move(b)),
      c_(std::move(c)),
      k_(std::move(k)),
      length_(length) {
  if (!a_ || !b_ || !c_ || !k_) {
    throw Error(ErrorCode::invalid_schedule, "schedule needs all four sequences");
  }
  if (length_ && *length_ < 1) throw Error(ErrorCode::invalid_schedule, "empty schedule");
}

ScheduleValues Schedule::at(long n) const {
  if (n < 1) throw Error(ErrorCode::invalid_schedule, "schedules are indexed from n = 1");
  if (length_ && n > *length_) {
    throw Error(ErrorCode::invalid_schedule,
                "schedule table exhausted (length " + std::to_string(*length_) + ")", n);
  }
  return {a_(n), b_(n), c_(n), k_(n)};
}

double Schedule::epsilon_for(double alpha) const {
  return epsilon_.value_or((1.0 - alpha) / 2.0);
}

Schedule Schedule::with_epsilon(double epsilon) const {
  Schedule copy = *this;
  copy.epsilon_ = epsilon;
  return copy;
}

Schedule Schedule::with_envelope(Sequence k) const {
  Schedule copy = *this;
  copy.k_ = std::move(k);
  return copy;
}

Schedule Schedule::with_zero_b() const {
  Schedule copy = *this;
  copy.b_ = [](long) { return 0.0; };
  copy.c_ = [a = a_](long n) { return 1.0 - a(n); };
  return copy;
}

Schedule make_paper_schedule() {
  auto a = [](long n) { return 1.0 / static_cast<double>(n); };
  auto b = [](long n) {
    const double x = static_cast<double>(n);
    return (x - 1.0) / (x * (x + 1.0));
  };
  auto c = [](long n) {
    const double x = static_cast<double>(n);
    return (x - 1.0) / (x + 1.0);
  };
  return Schedule(ScheduleFamily::paper, a, b, c, envelopes::geometric());
}

Schedule make_power_schedule(double s, double b_const) {
  if (!(s > 0.0)) throw Error(ErrorCode::invalid_schedule, "power schedule needs s > 0");
  if (!(b_const >= 0.0 && b_const < 1.0)) {
    throw Error(ErrorCode::invalid_schedule, "power schedule needs b_const in [0, 1)");
  }
  auto a = [s](long n) { return std::pow(static_cast<double>(n), -s); };
  auto b = [a, b_const](long n) { return b_const * (1.0 - a(n)); };
  auto c = [a, b](long n) { return 1.0 - a(n) - b(n); };
  Schedule sched(ScheduleFamily::power, a, b, c, envelopes::unit());
  sched.power_exponent_ = s;
  return sched;
}

Schedule make_table_schedule(std::vector<ScheduleValues> rows) {
  if (rows.empty()) throw Error(ErrorCode::invalid_schedule, "schedule table is empty");
  const auto table = std::make_shared<const std::vector<ScheduleValues>>(std::move(rows));
  auto row = [table](long n) -> const ScheduleValues& {
    return (*table)[static_cast<std::size_t>(n - 1)];
  };
  return Schedule(
      ScheduleFamily::custom, [row](long n) { return row(n).a; },
      [row](long n) { return row(n).b; }, [row](long n) { return row(n).c; },
      [row](long n) { return row(n).k; }, static_cast<long>(table->size()));
}

Schedule tabulate(const Schedule& schedule, long horizon) {
  if (horizon < 1) throw Error(ErrorCode::invalid_schedule, "tabulation horizon must be >= 1");
  if (schedule.length()) horizon = std::min(horizon, *schedule.length());
  std::vector<ScheduleValues> rows;
  rows.reserve(static_cast<std::size_t>(horizon));
  for (long n = 1; n <= horizon; ++n) rows.push_back(schedule.at(n));
  Schedule frozen = make_table_schedule(std::move(rows));
  // Keep family metadata so symbolic checks still apply to the frozen copy.
  Schedule out(schedule.family(), [frozen](long n) { return frozen.a(n); },
               [frozen](long n) { return frozen.b(n); }, [frozen](long n) { return frozen.c(n); },
               [frozen](long n) { return frozen.k(n); }, horizon);
  return out;
}

double inner_contraction_factor(const Schedule& schedule, long n) {
  const auto v = schedule.at(n);
  return v.c * v.k / 2.0;
}

bool ValidationReport::accepted() const noexcept {
  const bool ii_ok =
      condition_ii.verdict == Verdict::pass || condition_ii.verdict == Verdict::unknown;
  return condition_i.verdict == Verdict::pass && ii_ok &&
         condition_iii.verdict == Verdict::pass && simplex.verdict == Verdict::pass &&
         wellposed.verdict == Verdict::pass;
}

namespace {

// Least-squares slope of log y against log n over positive entries.
std::optional<double> loglog_slope(const std::vector<std::pair<long, double>>& points) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t m = 0;
  for (const auto& [n, y] : points) {
    if (!(y > 0.0) || !std::isfinite(y)) continue;
    const double lx = std::log(static_cast<double>(n));
    const double ly = std::log(y);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++m;
  }
  if (m < 2) return std::nullopt;
  const double denom = static_cast<double>(m) * sxx - sx * sx;
  if (denom == 0.0) return std::nullopt;
  return (static_cast<double>(m) * sxy - sx * sy) / denom;
}

// Index after the last violation of pred over [from, to], or nullopt if it
// fails at `to`.
template <typename Pred>
std::optional<long> first_holding(long from, long to, Pred pred) {
  std::optional<long> first;
  for (long n = from; n <= to; ++n) {
    if (pred(n)) {
      if (!first) first = n;
    } else {
      first.reset();
    }
  }
  return first;
}

}  // namespace

ValidationReport validate(const Schedule& schedule, long horizon,
                          const ValidationOptions& options) {
  if (horizon < 10) throw Error(ErrorCode::invalid_input, "validation horizon must be >= 10");
  long H = horizon;
  if (schedule.length()) H = std::min(H, *schedule.length());

  ValidationReport report;
  report.horizon = H;
  std::vector<ScheduleValues> v;
  v.reserve(static_cast<std::size_t>(H));
  for (long n = 1; n <= H; ++n) v.push_back(schedule.at(n));
  auto at = [&v](long n) -> const ScheduleValues& { return v[static_cast<std::size_t>(n - 1)]; };
  const long tail_start = std::max(1L, H / 2);

  // Simplex identity and closed-interval membership, pointwise.
  {
    auto& r = report.simplex;
    r.verdict = Verdict::pass;
    double worst = 0.0;
    long worst_n = 1;
    for (long n = 1; n <= H; ++n) {
      const auto& s = at(n);
      const double dev = std::abs(s.a + s.b + s.c - 1.0);
      const bool finite = std::isfinite(s.a) && std::isfinite(s.b) && std::isfinite(s.c) &&
                          std::isfinite(s.k);
      const bool in_range = finite && s.a > 0.0 && s.a <= 1.0 && s.b >= 0.0 && s.b < 1.0 &&
                            s.c >= 0.0 && s.c < 1.0 && s.k >= 1.0;
      if (!(s.a > 0.0 && s.a < 1.0 && s.c > 0.0 && s.c < 1.0)) {
        report.open_interval_exceptions.push_back(n);
      }
      if (dev > worst || !finite) {
        worst = finite ? dev : std::numeric_limits<double>::infinity();
        worst_n = n;
      }
      if (r.verdict == Verdict::pass && (!finite || dev > options.simplex_tolerance)) {
        r.verdict = Verdict::fail;
        r.value = finite ? dev : std::numeric_limits<double>::infinity();
        r.n = n;
        r.note = "a+b+c deviates from 1 at n=" + std::to_string(n);
      } else if (r.verdict == Verdict::pass && !in_range) {
        r.verdict = Verdict::fail;
        r.value = dev;
        r.n = n;
        r.note = "coefficient out of range at n=" + std::to_string(n);
      }
    }
    if (r.verdict == Verdict::pass) {
      r.value = worst;
      r.n = worst_n;
      r.note = "max |a+b+c-1|";
    }
    r.first_holding_n = first_holding(1, H, [&](long n) {
      const auto& s = at(n);
      return std::abs(s.a + s.b + s.c - 1.0) <= options.simplex_tolerance;
    });
  }

  // (i) a_n -> 0: non-increasing tail ending at or below the threshold.
  {
    auto& r = report.condition_i;
    r.value = at(H).a;
    r.n = H;
    bool monotone = true;
    for (long n = tail_start; n < H; ++n) {
      if (at(n + 1).a > at(n).a) {
        monotone = false;
        r.n = n + 1;
        break;
      }
    }
    r.first_holding_n =
        first_holding(1, H, [&](long n) { return at(n).a <= options.limit_threshold; });
    if (!monotone) {
      r.verdict = Verdict::fail;
      r.note = "a_n increases on the tail";
    } else if (r.value > options.limit_threshold) {
      r.verdict = Verdict::fail;
      r.note = "a_H above threshold";
    } else {
      r.verdict = Verdict::pass;
      r.note = "tail non-increasing, a_H <= threshold";
    }
  }

  // (ii) sum a_n = inf: symbolic for known families, partial sum otherwise.
  {
    auto& r = report.condition_ii;
    double partial = 0.0;
    for (long n = 1; n <= H; ++n) partial += at(n).a;
    r.value = partial;
    r.n = H;
    switch (schedule.family()) {
      case ScheduleFamily::paper:
        r.verdict = Verdict::pass;
        r.note = "harmonic family, sum diverges";
        break;
      case ScheduleFamily::power: {
        const double s = schedule.power_exponent().value_or(1.0);
        r.verdict = s <= 1.0 ? Verdict::pass : Verdict::fail;
        r.note = s <= 1.0 ? "p-series with s <= 1 diverges" : "p-series with s > 1 converges";
        break;
      }
      case ScheduleFamily::custom:
        r.verdict = Verdict::unknown;
        r.note = "not decidable numerically; partial sum reported";
        break;
    }
  }

  // (iii) (k_n^2 - 1)/a_n -> 0.
  {
    auto& r = report.condition_iii;
    auto ratio = [&](long n) {
      const auto& s = at(n);
      return (s.k * s.k - 1.0) / s.a;
    };
    r.value = ratio(H);
    r.n = H;
    bool monotone = true;
    std::vector<std::pair<long, double>> tail;
    for (long n = tail_start; n <= H; ++n) {
      tail.emplace_back(n, ratio(n));
      if (n < H && ratio(n + 1) > ratio(n)) monotone = false;
    }
    report.ratio_growth_exponent =
        loglog_slope(tail).value_or(std::numeric_limits<double>::quiet_NaN());
    r.first_holding_n =
        first_holding(1, H, [&](long n) { return ratio(n) <= options.ratio_tolerance; });
    if (!std::isfinite(r.value)) {
      r.verdict = Verdict::fail;
      r.note = "ratio not finite at the horizon";
    } else if (r.value > options.ratio_tolerance) {
      r.verdict = Verdict::fail;
      r.note = "tail ratio above tolerance";
    } else if (!monotone) {
      r.verdict = Verdict::fail;
      r.note = "tail ratio not decreasing";
    } else {
      r.verdict = Verdict::pass;
      r.note = "tail ratio below tolerance and non-increasing";
    }
  }

  // q_n = c_n k_n / 2 < 1 everywhere on the horizon.
  {
    auto& r = report.wellposed;
    r.value = -1.0;
    std::optional<long> first_bad;
    for (long n = 1; n <= H; ++n) {
      const double q = at(n).c * at(n).k / 2.0;
      if (q > r.value) {
        r.value = q;
        r.n = n;
      }
      if (!(q < 1.0) && !first_bad) first_bad = n;
    }
    r.first_holding_n = first_holding(1, H, [&](long n) { return at(n).c * at(n).k / 2.0 < 1.0; });
    if (first_bad) {
      r.verdict = Verdict::fail;
      r.note = "inner contraction factor >= 1 first at n=" + std::to_string(*first_bad);
    } else {
      r.verdict = Verdict::pass;
      r.note = "max q_n < 1";
    }
  }

  // sup k_n <= N(E)^{1/2}; violations are warnings.
  {
    auto& r = report.normal_structure_bound;
    r.value = 0.0;
    for (long n = 1; n <= H; ++n) {
      if (at(n).k > r.value) {
        r.value = at(n).k;
        r.n = n;
      }
    }
    const double bound = std::sqrt(options.normal_structure);
    r.first_holding_n = first_holding(1, H, [&](long n) { return at(n).k <= bound; });
    r.verdict = r.value <= bound ? Verdict::pass : Verdict::warn;
    r.note = "sup k_n vs N^(1/2) = " + std::to_string(bound);
  }

  return report;
}

}  // namespace midpoint
