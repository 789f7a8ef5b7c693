#include <gtest/gtest.h>

#include <cmath>
#include <cstdint>

#include "midpoint/schedules.hpp"
#include "expect_error.hpp"
#include "oracles.hpp"

namespace midpoint {
namespace {

using testing::error_code_of;

TEST(PaperSchedule, FirstTerms) {
  const Schedule s = make_paper_schedule();
  EXPECT_EQ(s.at(1), (ScheduleValues{1.0, 0.0, 0.0, 1.5}));
  const ScheduleValues v2 = s.at(2);
  EXPECT_DOUBLE_EQ(v2.a, 0.5);
  EXPECT_DOUBLE_EQ(v2.b, 1.0 / 6.0);
  EXPECT_DOUBLE_EQ(v2.c, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(v2.k, 1.25);
  // q_2 = (1/3)(5/4)/2 = 5/24
  EXPECT_NEAR(inner_contraction_factor(s, 2), 5.0 / 24.0, 1e-15);
  EXPECT_NEAR(inner_contraction_factor(s, 2), 0.208333, 1e-6);
}

TEST(PaperSchedule, SimplexIdentityExactOverIntegers) {
  // With common denominator n(n+1): (n+1) + (n-1) + n(n-1) = n(n+1).
  for (std::int64_t n = 1; n <= 1'000'000; ++n) {
    ASSERT_EQ((n + 1) + (n - 1) + n * (n - 1), n * (n + 1)) << n;
  }
  const Schedule s = make_paper_schedule();
  for (long n = 1; n <= 1'000'000; n += 997) {
    const auto v = s.at(n);
    ASSERT_NEAR(v.a + v.b + v.c, 1.0, 4e-16) << n;
  }
}

TEST(PaperSchedule, InnerFactorBelowOne) {
  const Schedule s = make_paper_schedule();
  for (long n = 1; n <= 100'000; ++n) ASSERT_LT(inner_contraction_factor(s, n), 1.0) << n;
}

TEST(PowerSchedule, Examples) {
  const Schedule s = make_power_schedule(2.0, 0.5);
  const auto v = s.at(2);
  EXPECT_DOUBLE_EQ(v.a, 0.25);
  EXPECT_DOUBLE_EQ(v.b, 0.375);
  EXPECT_DOUBLE_EQ(v.c, 0.375);
  EXPECT_EQ(v.k, 1.0);
  EXPECT_EQ(s.power_exponent(), 2.0);
  EXPECT_EQ(error_code_of([] { make_power_schedule(0.0, 0.1); }), ErrorCode::invalid_schedule);
  EXPECT_EQ(error_code_of([] { make_power_schedule(1.0, 1.0); }), ErrorCode::invalid_schedule);
}

TEST(ScheduleProperty, SimplexForBuiltins) {
  const Schedule families[] = {make_paper_schedule(), make_power_schedule(0.5, 0.3),
                               make_power_schedule(1.0, 0.0), make_power_schedule(2.0, 0.9)};
  for (const auto& s : families) {
    for (long n = 1; n <= 10'000; ++n) {
      const auto v = s.at(n);
      ASSERT_NEAR(v.a + v.b + v.c, 1.0, 1e-12) << n;
      ASSERT_GT(v.a, 0.0);
      ASSERT_GE(v.b, 0.0);
      ASSERT_GE(v.c, 0.0);
      ASSERT_GE(v.k, 1.0);
    }
  }
}

TEST(Schedule, IndexingAndExhaustion) {
  const Schedule t = make_table_schedule({{0.5, 0.25, 0.25, 1.0}, {0.4, 0.3, 0.3, 1.0}});
  EXPECT_EQ(t.length(), 2);
  EXPECT_EQ(error_code_of([&] { t.at(0); }), ErrorCode::invalid_schedule);
  try {
    t.at(3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::invalid_schedule);
    EXPECT_EQ(e.iteration(), 3);
  }
  EXPECT_EQ(error_code_of([] { make_table_schedule({}); }), ErrorCode::invalid_schedule);
}

TEST(Schedule, TabulateFreezesValuesAndFamily) {
  const Schedule s = make_paper_schedule();
  const Schedule t = tabulate(s, 500);
  EXPECT_EQ(t.family(), ScheduleFamily::paper);
  EXPECT_EQ(t.length(), 500);
  for (long n = 1; n <= 500; ++n) ASSERT_EQ(t.at(n), s.at(n));
}

TEST(Schedule, ZeroBVariant) {
  const Schedule s = make_paper_schedule().with_zero_b();
  for (long n = 1; n <= 50; ++n) {
    EXPECT_EQ(s.b(n), 0.0);
    EXPECT_EQ(s.c(n), 1.0 - s.a(n));
  }
}

TEST(Schedule, EpsilonDefaultAndOverride) {
  const Schedule s = make_paper_schedule();
  EXPECT_DOUBLE_EQ(s.epsilon_for(0.5), 0.25);
  EXPECT_DOUBLE_EQ(s.with_epsilon(0.1).epsilon_for(0.5), 0.1);
}

TEST(Validate, PaperScheduleAccepted) {
  const ValidationReport r = validate(make_paper_schedule(), 1000);
  EXPECT_EQ(r.simplex.verdict, Verdict::pass);
  EXPECT_EQ(r.condition_i.verdict, Verdict::pass);
  EXPECT_EQ(r.condition_ii.verdict, Verdict::pass);
  EXPECT_EQ(r.condition_iii.verdict, Verdict::pass);
  EXPECT_EQ(r.wellposed.verdict, Verdict::pass);
  EXPECT_TRUE(r.accepted());
  // k_1 = 1.5 exceeds 2^{1/4}; reported, not fatal.
  EXPECT_EQ(r.normal_structure_bound.verdict, Verdict::warn);
  EXPECT_DOUBLE_EQ(r.normal_structure_bound.value, 1.5);
  EXPECT_EQ(r.normal_structure_bound.n, 1);
  // n = 1 has a = 1 and c = 0.
  ASSERT_FALSE(r.open_interval_exceptions.empty());
  EXPECT_EQ(r.open_interval_exceptions.front(), 1);
}

TEST(Validate, SummableSeriesRejected) {
  const ValidationReport r = validate(make_power_schedule(2.0, 0.0), 1000);
  EXPECT_EQ(r.condition_ii.verdict, Verdict::fail);
  EXPECT_FALSE(r.accepted());
  EXPECT_EQ(validate(make_power_schedule(1.0, 0.0), 1000).condition_ii.verdict, Verdict::pass);
}

TEST(Validate, EnvelopeRatioGrowth) {
  // k = 1 + 1/n with a = 1/n^2: (k^2 - 1)/a = 2n + 1.
  std::vector<ScheduleValues> rows;
  for (long n = 1; n <= 2000; ++n) {
    const double x = static_cast<double>(n);
    const double a = 1.0 / (x * x);
    rows.push_back({a, 0.0, 1.0 - a, 1.0 + 1.0 / x});
  }
  const ValidationReport r = validate(make_table_schedule(rows), 2000);
  EXPECT_EQ(r.condition_iii.verdict, Verdict::fail);
  EXPECT_NEAR(r.condition_iii.value, 2.0 * 2000 + 1.0, 1e-6);
  EXPECT_NEAR(r.ratio_growth_exponent, 1.0, 0.02);
  EXPECT_EQ(r.condition_ii.verdict, Verdict::unknown);
}

TEST(Validate, SimplexViolationNamesIteration) {
  const Schedule paper = make_paper_schedule();
  std::vector<ScheduleValues> rows;
  for (long n = 1; n <= 20; ++n) rows.push_back(paper.at(n));
  rows[6].b += 0.01;  // n = 7
  const ValidationReport r = validate(make_table_schedule(rows), 20);
  EXPECT_EQ(r.simplex.verdict, Verdict::fail);
  EXPECT_EQ(r.simplex.n, 7);
  EXPECT_NE(r.simplex.note.find("n=7"), std::string::npos);
  EXPECT_FALSE(r.accepted());
}

TEST(Validate, IllPosedFactorNamesIteration) {
  std::vector<ScheduleValues> rows(12, {0.1, 0.0, 0.9, 1.0});
  rows[4] = {0.05, 0.0, 0.95, 2.2};  // q_5 = 1.045
  const ValidationReport r = validate(make_table_schedule(rows), 12);
  EXPECT_EQ(r.wellposed.verdict, Verdict::fail);
  EXPECT_NE(r.wellposed.note.find("n=5"), std::string::npos);
}

TEST(Validate, HorizonTooShort) {
  EXPECT_EQ(error_code_of([] { validate(make_paper_schedule(), 9); }), ErrorCode::invalid_input);
}

}  // namespace
}  // namespace midpoint
