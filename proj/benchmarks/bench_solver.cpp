#include <benchmark/benchmark.h>

#include "loopcount/fd_text.hpp"
#include "loopcount/report.hpp"

namespace {

using namespace loopcount;

void BM_CountRectangle(benchmark::State& state) {
  const auto side = std::to_string(state.range(0));
  for (auto _ : state) {
    TextCsp t = parseCsp("I >= 0\nI <= " + side + "\nJ >= 0\nJ <= " + side + "\n");
    CountResult r = t.csp.countSolutions({t.id("I"), t.id("J")});
    benchmark::DoNotOptimize(r.count);
  }
}
BENCHMARK(BM_CountRectangle)->Arg(10)->Arg(1000)->Arg(100000);

void BM_CountTriangle(benchmark::State& state) {
  const auto n = std::to_string(state.range(0));
  for (auto _ : state) {
    TextCsp t = parseCsp("I >= 0\nI <= " + n + "\nJ <= I\nJ >= 1\n(J - I) mod 2 = 0\n");
    CountResult r = t.csp.countSolutions({t.id("I"), t.id("J")});
    benchmark::DoNotOptimize(r.count);
  }
}
BENCHMARK(BM_CountTriangle)->Arg(9)->Arg(99)->Arg(999);

void BM_WorkedNest(benchmark::State& state) {
  const char* src =
      "int main() { int i; int j; for (i = 0; i < 10; ++i) for (j = i; j > 0; j -= 2) ; return 0; }";
  for (auto _ : state) {
    FileReport f = analyzeSource(src, "nest.c");
    if (f.loops.size() != 2 || !f.loops[1].constrained() || f.loops[1].flow->constraint.n != 25) {
      state.SkipWithError("unexpected flow constraint");
      break;
    }
  }
}
BENCHMARK(BM_WorkedNest);

}  // namespace

BENCHMARK_MAIN();
