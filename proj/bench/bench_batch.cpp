// Serial against OpenMP batch kernels.

#include <benchmark/benchmark.h>

#include <random>

#include "shiftz/batch.hpp"

using namespace shiftz;

namespace {

std::vector<BiPoint> sample(std::size_t n) {
  std::mt19937_64 rng(7);
  auto word = [&](std::size_t lo, std::size_t hi) {
    Word w(std::uniform_int_distribution<std::size_t>(lo, hi)(rng));
    for (auto& a : w) a = std::uniform_int_distribution<Letter>(0, 5)(rng);
    return w;
  };
  std::vector<BiPoint> xs;
  for (std::size_t i = 0; i < n; ++i) {
    xs.push_back(BiPoint::infinite(word(1, 3), word(0, 8), word(1, 3), std::uniform_int_distribution<std::int64_t>(-6, 6)(rng)));
  }
  return xs;
}

void contains(benchmark::State& state, Exec exec) {
  const auto xs = sample(static_cast<std::size_t>(state.range(0)));
  const SpaceHandle h(parse_spec_json(R"({"forbid_words": ["11", "2*3", "404"], "forbid_tails": ["(01)^-"]})"));
  for (auto _ : state) benchmark::DoNotOptimize(contains_batch(h, xs, exec));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void apply(benchmark::State& state, Exec exec) {
  const auto xs = sample(static_cast<std::size_t>(state.range(0)));
  const SlidingBlockCode c = sbc_compose(halving_code(), shift_code());
  for (auto _ : state) benchmark::DoNotOptimize(apply_batch(c, xs, exec));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK_CAPTURE(contains, serial, Exec::Serial)->Arg(1 << 12)->Arg(1 << 15);
BENCHMARK_CAPTURE(contains, parallel, Exec::Parallel)->Arg(1 << 12)->Arg(1 << 15);
BENCHMARK_CAPTURE(apply, serial, Exec::Serial)->Arg(1 << 12)->Arg(1 << 15);
BENCHMARK_CAPTURE(apply, parallel, Exec::Parallel)->Arg(1 << 12)->Arg(1 << 15);

int main(int argc, char** argv) {
  benchmark::AddCustomContext("openmp", parallel_available() ? "on" : "off");
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
