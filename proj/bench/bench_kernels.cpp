#include <benchmark/benchmark.h>

#include <random>

#include "unproj/fano.hpp"
#include "unproj/parallel.hpp"

using namespace unproj;

namespace {

const ConstructedFamily& family() {
  static const ConstructedFamily f = construct_family({});
  return f;
}

/// Products of generators with random monomials, the typical input of a
/// normal-form batch.
std::vector<Polynomial> reduction_batch(std::size_t n) {
  const auto& f = family();
  const Ring& a = f.ideal.ambient;
  std::mt19937_64 rng(5);
  std::vector<Polynomial> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Exp> e(a->nvars(), 0);
    for (int k = 0; k < 4; ++k) ++e[rng() % a->nvars()];
    const Polynomial& g = f.ideal.generators[rng() % f.ideal.generators.size()];
    out.push_back(g.shifted(e, Rational(1)) + Polynomial::monomial(a, e, Rational(1)) * g * g);
  }
  return out;
}

void BM_ReduceAllSerial(benchmark::State& state) {
  auto batch = reduction_batch(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(reduce_all_serial(batch, family().basis));
}

void BM_ReduceAllParallel(benchmark::State& state) {
  auto batch = reduction_batch(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(reduce_all(batch, family().basis));
}

void BM_EvaluateMinorsSerial(benchmark::State& state) {
  const JacobianData j = jacobian(family().ideal);
  auto samples = sample_minors(family().ideal, 0, static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_minors_serial(j, samples, family().basis));
}

void BM_EvaluateMinorsParallel(benchmark::State& state) {
  const JacobianData j = jacobian(family().ideal);
  auto samples = sample_minors(family().ideal, 0, static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_minors(j, samples, family().basis));
}

}  // namespace

BENCHMARK(BM_ReduceAllSerial)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ReduceAllParallel)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EvaluateMinorsSerial)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EvaluateMinorsParallel)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
