#include <benchmark/benchmark.h>

#include <random>

#include "midpoint/solver.hpp"
#include "midpoint/space.hpp"

namespace {

using namespace midpoint;

Matrix scaled_random(std::size_t d, double target_norm) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  Matrix A(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j) A(i, j) = U(rng);
  return A * (target_norm / spectral_norm_estimate(A));
}

void BM_ImplicitStepAffine(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  SolverConfig cfg{.scheme = SchemeKind::of(Scheme::AGVIM),
                   .mapping = make_affine(scaled_random(d, 0.9), Vector(d, 0.1)),
                   .contraction = make_contraction_half(),
                   .schedule = make_paper_schedule().with_envelope([](long) { return 1.0; }),
                   .x1 = Vector(d, 1.0)};
  for (auto _ : state) benchmark::DoNotOptimize(implicit_step(cfg, 5, cfg.x1));
}
BENCHMARK(BM_ImplicitStepAffine)->Arg(2)->Arg(8)->Arg(32);

void BM_FlipRun(benchmark::State& state) {
  SolverConfig cfg{.scheme = SchemeKind::of(Scheme::AGVIM),
                   .mapping = make_flip_map(),
                   .contraction = make_contraction_half(),
                   .schedule = make_paper_schedule(),
                   .x1 = Vector{0.5, 1.0}};
  for (auto _ : state) benchmark::DoNotOptimize(run(cfg));
}
BENCHMARK(BM_FlipRun);

void BM_DualityMap(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  Vector x(d);
  for (std::size_t i = 0; i < d; ++i) x[i] = 0.5 - static_cast<double>(i % 7) / 7.0;
  for (auto _ : state) benchmark::DoNotOptimize(duality_map(x, NormSpec{3.0}));
}
BENCHMARK(BM_DualityMap)->Arg(2)->Arg(64)->Arg(1024);

}  // namespace

BENCHMARK_MAIN();
