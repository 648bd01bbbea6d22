/*
   Copyright 2026 The novikov-gysin Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <benchmark/benchmark.h>

#include "novikov/sweep.hpp"

namespace {

novikov::SweepOptions options(int jobs) {
  novikov::SweepOptions opt;
  opt.count = 40;
  opt.jobs = jobs;
  return opt;
}

void BM_DoubleConeSerial(benchmark::State& state) {
  const auto opt = options(1);
  for (auto _ : state) benchmark::DoNotOptimize(novikov::double_cone_sweep_serial(opt));
}
BENCHMARK(BM_DoubleConeSerial)->Unit(benchmark::kMillisecond);

void BM_DoubleConeParallel(benchmark::State& state) {
  const auto opt = options(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(novikov::double_cone_sweep(opt));
}
BENCHMARK(BM_DoubleConeParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_SeidelParallel(benchmark::State& state) {
  const std::vector<novikov::Exponent> cutoffs{novikov::Exponent(12)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(novikov::seidel_sweep(0, 40, novikov::Exponent(1), cutoffs, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_SeidelParallel)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
