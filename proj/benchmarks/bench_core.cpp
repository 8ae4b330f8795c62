#include <benchmark/benchmark.h>

#include "lue/auxiliary.hpp"
#include "lue/moments.hpp"
#include "lue/oracle.hpp"
#include "lue/orthopoly.hpp"

namespace {

using namespace lue;

JumpWeight generic_weight() {
  return JumpWeight::make(parse_real("0.5"), Real(1), Real(1), Real(2));
}

void BM_GammaUpper(benchmark::State& state) {
  const Precision prec{static_cast<int>(state.range(0)), static_cast<int>(state.range(0)) / 2};
  PrecisionGuard guard(prec.digits);
  const Real s = parse_real("7.25");
  const Real t = parse_real("3.5");
  for (auto _ : state) benchmark::DoNotOptimize(gamma_upper(s, t, prec));
}
BENCHMARK(BM_GammaUpper)->Arg(50)->Arg(100)->Arg(200)->Arg(400);

void BM_MomentTable(benchmark::State& state) {
  const Precision prec{100, 50};
  PrecisionGuard guard(prec.digits);
  const JumpWeight w = generic_weight();
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(moment_table(w, k, prec));
}
BENCHMARK(BM_MomentTable)->RangeMultiplier(2)->Range(8, 64);

// Includes the doubled-precision verification pass.
void BM_BuildOrtho(benchmark::State& state) {
  const Precision prec{100, 50};
  PrecisionGuard guard(prec.digits);
  const JumpWeight w = generic_weight();
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_ortho(w, n, prec));
  state.SetComplexityN(n);
}
BENCHMARK(BM_BuildOrtho)->RangeMultiplier(2)->Range(4, 32)->Unit(benchmark::kMillisecond)
    ->Complexity();

void BM_BuildOrthoUnverified(benchmark::State& state) {
  const Precision prec{100, 50};
  PrecisionGuard guard(prec.digits);
  const JumpWeight w = generic_weight();
  BuildOptions opts;
  opts.verify_doubling = false;
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_ortho(w, n, prec, opts));
}
BENCHMARK(BM_BuildOrthoUnverified)->RangeMultiplier(2)->Range(4, 32)
    ->Unit(benchmark::kMillisecond);

void BM_AuxTable(benchmark::State& state) {
  const Precision prec{100, 50};
  PrecisionGuard guard(prec.digits);
  const JumpWeight w = generic_weight();
  OrthoTable ortho = build_ortho(w, 12, prec);
  for (auto _ : state) benchmark::DoNotOptimize(aux_table(ortho));
}
BENCHMARK(BM_AuxTable);

void BM_DirectHankel(benchmark::State& state) {
  const Precision prec{40, 15};
  PrecisionGuard guard(prec.digits);
  const JumpWeight w = generic_weight();
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(direct_hankel(w, n, prec));
}
BENCHMARK(BM_DirectHankel)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
