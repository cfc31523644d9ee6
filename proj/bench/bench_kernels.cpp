// Parallel against serial exact inequality checks over a range of indices.

#include <benchmark/benchmark.h>

#include "pturan/cli/corpus.hpp"
#include "pturan/sequences/derived.hpp"

using namespace pturan;

namespace {

SequenceView view(const std::string& name, Transform t) {
  SequenceView seq(make_table(find_corpus_entry(name)->source.parse()), t);
  seq.terms(0, 4002);  // terms are shared, so only the evaluation is timed
  return seq;
}

using Kernel = std::vector<long> (*)(const SequenceView&, Inequality, long, long);

void run(benchmark::State& state, Kernel kernel, const std::string& name, Transform t) {
  const SequenceView seq = view(name, t);
  const long to = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(kernel(seq, Inequality::turan3, 1, to));
  state.SetItemsProcessed(state.iterations() * to);
}

void parallel(benchmark::State& state, const std::string& name, Transform t) {
  run(state, check_inequality_range, name, t);
}
void serial(benchmark::State& state, const std::string& name, Transform t) {
  run(state, check_inequality_range_serial, name, t);
}

}  // namespace

BENCHMARK_CAPTURE(parallel, motzkin, std::string("motzkin"), Transform{1, 0})
    ->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(serial, motzkin, std::string("motzkin"), Transform{1, 0})
    ->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(parallel, franel, std::string("franel"), Transform{1, 0})
    ->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(serial, franel, std::string("franel"), Transform{1, 0})
    ->Arg(1000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
