// Copyright 2026 The padiclab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "padiclab/checkers.hpp"
#include "padiclab/dynamics.hpp"
#include "padiclab/padic.hpp"

namespace {

using namespace padiclab;

// log(1 + p) to k digits.
static void BM_PadicLog(benchmark::State& state) {
  const unsigned long p = 5;
  const int k = static_cast<int>(state.range(0));
  const PAdic x = PAdic::from_integer(p, k, 1 + static_cast<long>(p));
  for (auto _ : state) benchmark::DoNotOptimize(padic_log(x));
}
BENCHMARK(BM_PadicLog)->Arg(8)->Arg(32)->Arg(128);

static void BM_HenselSqrt(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const PAdic five = PAdic::from_integer(11, k, 5);
  for (auto _ : state) benchmark::DoNotOptimize(hensel_sqrt(five));
}
BENCHMARK(BM_HenselSqrt)->Arg(16)->Arg(64)->Arg(256);

static void BM_EigenDecompose(benchmark::State& state) {
  const Mat2 a = matrix_of_word(parse_word("1213"));
  for (auto _ : state) benchmark::DoNotOptimize(eigen_decompose(a, 7, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_EigenDecompose)->Arg(16)->Arg(64);

// Prefix residues of the Fibonacci word mod 3^k, n prefixes.
static void BM_UkScan(benchmark::State& state) {
  const WordSource fib = WordSource::fibonacci();
  for (auto _ : state) {
    UkScan scan(fib, 3, 3);
    scan.advance(static_cast<std::size_t>(state.range(0)));
    benchmark::DoNotOptimize(scan.current());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_UkScan)->RangeMultiplier(4)->Range(1 << 12, 1 << 18);

static void BM_SubstitutionClosure(benchmark::State& state) {
  const Substitution tm = *WordSource::thue_morse().substitution();
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(substitution_closure(tm, 2, k, 1 << 20));
}
BENCHMARK(BM_SubstitutionClosure)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

static void BM_FactorGraph(benchmark::State& state) {
  const WordSource tm = WordSource::thue_morse();
  for (auto _ : state) {
    benchmark::DoNotOptimize(factor_graph(tm, static_cast<std::size_t>(state.range(0)), 1 << 16));
  }
}
BENCHMARK(BM_FactorGraph)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

static void BM_PBadEstimate(benchmark::State& state) {
  const EigenData e = eigen_decompose(Mat2::letter(1), 11, 16);
  for (auto _ : state) benchmark::DoNotOptimize(pbad_estimate(*e.v1, state.range(0)));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PBadEstimate)->RangeMultiplier(2)->Range(8, 128)->Complexity();

static void BM_ThMainPeriodic(benchmark::State& state) {
  const ThMainInstance in{Mat2::letter(1), ProjPoint::from_integers(11, 40, 1, 3), WordSource::periodic(parse_word("1")),
                          11, static_cast<int>(state.range(0)), std::nullopt};
  for (auto _ : state) benchmark::DoNotOptimize(check_th_main(in));
}
BENCHMARK(BM_ThMainPeriodic)->Arg(4)->Arg(12);

}  // namespace

BENCHMARK_MAIN();
