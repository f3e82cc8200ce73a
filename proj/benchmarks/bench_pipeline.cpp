#include <benchmark/benchmark.h>

#include "loopcount/corpus.hpp"
#include "loopcount/report.hpp"

namespace {

using namespace loopcount;

void BM_AnalyzeCorpus(benchmark::State& state) {
  DriverOptions opts;
  opts.mode = static_cast<AnalysisMode>(state.range(0));
  const auto files = corpusFiles(LOOPCOUNT_CORPUS_DIR);
  for (auto _ : state) {
    AnalysisReport report = run(files, opts);
    for (const auto& f : report.files) {
      for (const auto& l : f.loops) {
        if (opts.mode == AnalysisMode::Both && l.constrained() && !l.bounded()) {
          state.SkipWithError("constrained loop without a loop bound");
          return;
        }
      }
    }
    benchmark::DoNotOptimize(report.totals().loops);
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * files.size()));
}
BENCHMARK(BM_AnalyzeCorpus)
    ->Arg(static_cast<int>(AnalysisMode::Bounds))
    ->Arg(static_cast<int>(AnalysisMode::Constraints))
    ->Arg(static_cast<int>(AnalysisMode::Both))
    ->Unit(benchmark::kMillisecond);

void BM_CorpusWithOracle(benchmark::State& state) {
  const auto files = corpusFiles(LOOPCOUNT_CORPUS_DIR);
  for (auto _ : state) {
    CorpusRun r = runCorpus(files);
    if (!r.subsetHolds() || !r.oracleHolds()) {
      state.SkipWithError("corpus check failed");
      break;
    }
  }
}
BENCHMARK(BM_CorpusWithOracle)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
