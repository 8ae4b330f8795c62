#include <benchmark/benchmark.h>

#include "lue/dynamics.hpp"
#include "lue/identities.hpp"

namespace {

using namespace lue;

const Precision kPrec{100, 50};

// One t point, n = 0..range(0).
void BM_VerifySuite(benchmark::State& state) {
  PrecisionGuard guard(kPrec.digits);
  const JumpWeight w = JumpWeight::make(parse_real("0.5"), Real(1), Real(1), Real(0));
  const int n_max = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(verify_suite(w, n_max, {Real(2)}, kPrec));
}
BENCHMARK(BM_VerifySuite)->Arg(4)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_DifferentialSuite(benchmark::State& state) {
  PrecisionGuard guard(kPrec.digits);
  const JumpWeight w = JumpWeight::make(parse_real("0.5"), Real(1), Real(1), Real(0));
  const int n_max = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(differential_suite(w, n_max, {Real(2)}, kPrec));
  }
}
BENCHMARK(BM_DifferentialSuite)->Arg(4)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_IntegratePV(benchmark::State& state) {
  const Precision prec{100, static_cast<int>(state.range(0))};
  PrecisionGuard guard(prec.digits);
  const JumpWeight w = JumpWeight::make(parse_real("0.5"), Real(0), Real(1), Real(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate_pv(w, 2, Real(1), Real(2), 1, prec));
  }
}
BENCHMARK(BM_IntegratePV)->Arg(30)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_HardEdgeScan(benchmark::State& state) {
  PrecisionGuard guard(kPrec.digits);
  const JumpWeight w = JumpWeight::make(parse_real("0.5"), Real(0), Real(1), Real(1));
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hard_edge_scan(w, Real(1), {n}, kPrec));
}
BENCHMARK(BM_HardEdgeScan)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
