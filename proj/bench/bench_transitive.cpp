// Serial vs OpenMP generation of transitivity clauses for k interactions.
#include <benchmark/benchmark.h>

#include "prisyn/sat.hpp"

namespace {

std::vector<int> variables(std::size_t k) {
  std::vector<int> var(k * k, 0);
  int next = 1;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) var[i * k + j] = next++;
  return var;
}

template <auto Kernel>
void transitive(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const auto var = variables(k);
  for (auto _ : state) {
    auto clauses = Kernel(k, var);
    benchmark::DoNotOptimize(clauses.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * k * (k - 1) * (k - 2)));
}

}  // namespace

BENCHMARK(transitive<prisyn::transitive_clauses_serial>)->Name("transitive/serial")->RangeMultiplier(2)->Range(16, 256);
BENCHMARK(transitive<prisyn::transitive_clauses_parallel>)->Name("transitive/parallel")->RangeMultiplier(2)->Range(16, 256)->UseRealTime();

BENCHMARK_MAIN();
