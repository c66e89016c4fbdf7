#include <benchmark/benchmark.h>

#include <random>

#include "pathkit/multivar.hpp"
#include "pathkit/pathway.hpp"
#include "pathkit/reactions.hpp"
#include "pathkit/superstat.hpp"
#include "pathkit/transforms.hpp"

using namespace pathkit;

namespace {

void BM_PathwayPdf(benchmark::State& state) {
  const pathway::PathwayParams p{1.4, 1.0, 2.0, 1.5, 1.0, false};
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pathway::pdf(p, x));
    x = x < 5 ? x + 0.01 : 0.1;
  }
}
BENCHMARK(BM_PathwayPdf);

void BM_PathwaySample(benchmark::State& state) {
  const pathway::PathwayParams p{0.5, 1.0, 2.0, 1.5, 1.0, false};
  std::mt19937_64 rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(pathway::sample(p, rng, 1000));
}
BENCHMARK(BM_PathwaySample);

void BM_LaplaceHFunction(benchmark::State& state) {
  const double alpha = static_cast<double>(state.range(0)) / 10;
  const pathway::PathwayParams p{alpha, 1.0, 2.0, 1.5, 1.0, false};
  for (auto _ : state) benchmark::DoNotOptimize(transforms::laplace_pathway_hfun(p, 1.3));
}
BENCHMARK(BM_LaplaceHFunction)->Arg(5)->Arg(10)->Arg(15);

void BM_LaplaceQuadrature(benchmark::State& state) {
  const double alpha = static_cast<double>(state.range(0)) / 10;
  const pathway::PathwayParams p{alpha, 1.0, 2.0, 1.5, 1.0, false};
  for (auto _ : state) benchmark::DoNotOptimize(transforms::laplace_pathway_quad(p, 1.3));
}
BENCHMARK(BM_LaplaceQuadrature)->Arg(5)->Arg(10)->Arg(15);

void BM_ReactionHForm(benchmark::State& state) {
  reactions::ReactionIntegralSpec s;
  s.gamma = 1.5;
  s.a = 1.2;
  s.b = 0.8;
  s.delta = 1.5;
  s.alpha = 1.3;
  for (auto _ : state) benchmark::DoNotOptimize(reactions::i1_alpha_hfun(s));
}
BENCHMARK(BM_ReactionHForm);

void BM_ReactionQuadrature(benchmark::State& state) {
  reactions::ReactionIntegralSpec s;
  s.gamma = 1.5;
  s.a = 1.2;
  s.b = 0.8;
  s.delta = 1.5;
  s.alpha = 1.3;
  for (auto _ : state) benchmark::DoNotOptimize(reactions::i1_alpha(s));
}
BENCHMARK(BM_ReactionQuadrature);

void BM_ExtendedMarginal(benchmark::State& state) {
  superstat::SuperstatModel m;
  m.gamma = 1;
  m.delta = 2;
  m.lam = 0.5;
  m.alpha = 1.2;
  for (auto _ : state) benchmark::DoNotOptimize(superstat::ext_marginal_pdf(m, 0.7));
}
BENCHMARK(BM_ExtendedMarginal);

void BM_U1Density(benchmark::State& state) {
  multivar::MatrixPathwaySpec s;
  s.p = static_cast<int>(state.range(0));
  s.q = s.p + 1;
  s.gamma = 0.5;
  for (auto _ : state) benchmark::DoNotOptimize(multivar::u1_density(s, 0.3));
}
BENCHMARK(BM_U1Density)->Arg(1)->Arg(2)->Arg(3);

}  // namespace

BENCHMARK_MAIN();
