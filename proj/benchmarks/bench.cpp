#include <benchmark/benchmark.h>

#include "tshift/classifiers.hpp"
#include "tshift/decomposition.hpp"
#include "tshift/grws.hpp"
#include "tshift/numeric.hpp"

namespace {

using namespace tshift;

void BM_Moments(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    // Fresh sequence each round so the value cache does not hide the work.
    const SqWeightSeq w = grws_sequence({make_rational(2), make_rational(1, 3), make_rational(2, 3)});
    benchmark::DoNotOptimize(moments(w, n));
  }
}
BENCHMARK(BM_Moments)->Arg(50)->Arg(200);

void BM_KProfile(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    const SqWeightSeq w = grws_sequence({make_rational(2), make_rational(1, 5), make_rational(3, 5)});
    benchmark::DoNotOptimize(k_hyponormality_profile(w, k, 30));
  }
}
BENCHMARK(BM_KProfile)->DenseRange(1, 4);

void BM_DecomposeCoanalytic(benchmark::State& state) {
  const auto delta = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    const Decomposition dec = decompose_htoeplitz_coanalytic(delta + 2, 2);
    benchmark::DoNotOptimize(dec.shifts(64));
  }
}
BENCHMARK(BM_DecomposeCoanalytic)->Arg(1)->Arg(4);

void BM_WeightedBergmanWeights(benchmark::State& state) {
  for (auto _ : state) {
    const Decomposition dec = decompose_weighted_bergman(2, 2, make_rational(1, 2));
    const OrbitShift sh = dec.shift(1);
    benchmark::DoNotOptimize(sh.weights.values(200));
  }
}
BENCHMARK(BM_WeightedBergmanWeights);

void BM_BergerFit(benchmark::State& state) {
  const auto r = static_cast<std::size_t>(state.range(0));
  // Special line D = 2^(r-1) N has an r-atomic Berger measure.
  const Rational n = make_rational(1, 5);
  const SqWeightSeq w = grws_sequence({make_rational(2), n, n * pow(make_rational(2), r - 1)});
  const MomentSeq gamma = moments(w, 40);
  for (auto _ : state) benchmark::DoNotOptimize(berger_fit(gamma, r));
}
BENCHMARK(BM_BergerFit)->Arg(2)->Arg(3);

}  // namespace

BENCHMARK_MAIN();
