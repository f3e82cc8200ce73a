#include <catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "pipeline.hpp"
#include "loopcount/corpus.hpp"

using namespace loopcount;
using testing::Pipeline;

namespace {

Interval iv(long long lo, long long hi) { return Interval(Bound(lo), Bound(hi)); }

const std::vector<StmtPtr>& mainStmts(const Program& p) {
  return p.findFunction("main")->body->as<Block>()->stmts;
}

}  // namespace

TEST_CASE("transfer of assignments and branches", "[interval_analysis]") {
  Program p = parse("int main(int x) { x = 5; x = x + 1; if (0) x = 2; return x; }");
  const auto& s = mainStmts(p);
  AbstractState top;
  AbstractState afterLit = transfer(p, *s[0], top, Edge::Fall);
  CHECK(afterLit.get("x") == iv(5, 5));

  AbstractState ranged;
  ranged.set("x", iv(0, 9));
  CHECK(transfer(p, *s[1], ranged, Edge::Fall).get("x") == iv(1, 10));
  CHECK(transfer(p, *s[2], top, Edge::True).isBottom());
  CHECK_FALSE(transfer(p, *s[2], top, Edge::False).isBottom());
  CHECK(transfer(p, *s[1], AbstractState::bottom(), Edge::Fall).isBottom());
  CHECK_THROWS_AS(transfer(p, *s[2], top, Edge::Fall), std::invalid_argument);
}

TEST_CASE("straight-line constants propagate", "[interval_analysis]") {
  Pipeline pl("int main() { int x; int y; x = 1; y = x + 2; return y; }");
  const auto& s = mainStmts(*pl.program);
  const AbstractState& after = pl.itv.after(s[3]->label);
  CHECK(after.get("x") == iv(1, 1));
  CHECK(after.get("y") == iv(3, 3));
}

TEST_CASE("loop exit state after widening and branch refinement", "[interval_analysis]") {
  Pipeline pl("int main() { int i; i = 0; while (i < 10) i = i + 1; return i; }");
  const auto& s = mainStmts(*pl.program);
  const Loop& loop = *s[2]->as<Loop>();
  // Head: widened to [0, +inf).
  CHECK(pl.itv.before(loop.condLabel).get("i") == Interval(Bound(0), Bound::posInf()));
  // Body: refined by the true edge.
  CHECK(pl.itv.before(loop.body->label).get("i") == iv(0, 9));
  // Exit: refined by the false edge only, no narrowing.
  CHECK(pl.itv.before(s[3]->label).get("i") == Interval(Bound(10), Bound::posInf()));
}

TEST_CASE("dead branches are unreachable", "[interval_analysis]") {
  Pipeline pl("int main() { int x; x = 0; if (1) { x = 1; } else { x = 2; } return x; }");
  const If& branch = *mainStmts(*pl.program)[2]->as<If>();
  CHECK(pl.itv.before(branch.otherwise->label).isBottom());
  CHECK(pl.itv.after(mainStmts(*pl.program)[2]->label).get("x") == iv(1, 1));
}

TEST_CASE("globals start at their initializers, parameters at top", "[interval_analysis]") {
  Pipeline pl("int g = 4; int h; int main(int p) { int x; x = g + h; return p; }");
  const auto& s = mainStmts(*pl.program);
  CHECK(pl.itv.after(s[1]->label).get("x") == iv(4, 4));
  CHECK(pl.itv.after(s[1]->label).get("p").isTop());
}

TEST_CASE("calls are inlined up to the configured depth", "[interval_analysis]") {
  const char* src = R"(
    int g;
    int inc(int a) { g = g + 1; return a + 1; }
    int main() { int x; x = inc(3); return x; })";
  Pipeline inlined(src);
  const auto& s = mainStmts(*inlined.program);
  CHECK(inlined.itv.after(s[1]->label).get("x") == iv(4, 4));
  CHECK(inlined.itv.after(s[1]->label).get("g") == iv(1, 1));

  Pipeline summarized(src, IntervalOptions{0});
  CHECK(summarized.itv.after(s[1]->label).get("x").isTop());
  CHECK(summarized.itv.after(s[1]->label).get("g").isTop());
}

TEST_CASE("functions not inlined are analysed from a top state", "[interval_analysis]") {
  Pipeline pl(R"(
    int helper(int n) { int k; k = 0; while (k < 5) k = k + 1; return k; }
    int main() { return 0; })");
  const Function* helper = pl.program->findFunction("helper");
  const auto& s = helper->body->as<Block>()->stmts;
  CHECK_FALSE(pl.itv.before(s[1]->label).isBottom());
  CHECK(pl.itv.after(s[1]->label).get("k") == iv(0, 0));
}

TEST_CASE("address-taken variables are forgotten across calls", "[interval_analysis]") {
  Pipeline pl(R"(
    int set(int *p) { return 0; }
    int main() { int x; int r; x = 1; r = set(&x); return x; })", IntervalOptions{0});
  const auto& s = mainStmts(*pl.program);
  CHECK(pl.itv.after(s[3]->label).get("x").isTop());
}

TEST_CASE("analysis results dump as JSON", "[interval_analysis]") {
  Pipeline pl("int main() { int x; x = 2; if (0) x = 3; return x; }");
  nlohmann::json j = pl.itv.toJson();
  REQUIRE(j.is_array());
  bool sawBottom = false, sawX = false;
  for (const auto& e : j) {
    CHECK(e.contains("label"));
    CHECK((e["point"] == "before" || e["point"] == "after"));
    if (e.value("bottom", false)) sawBottom = true;
    if (e.contains("env") && e["env"].contains("x") && e["env"]["x"] == nlohmann::json::array({2, 2})) sawX = true;
  }
  CHECK(sawBottom);
  CHECK(sawX);
}

TEST_CASE("random programs: concrete values stay inside the intervals", "[interval_analysis]") {
  testing::Rng rng(31337);
  std::size_t observations = 0;
  for (int k = 0; k < 150; ++k) {
    testing::ProgramCase pc = testing::randomProgram(rng);
    Program program = parse(pc.source);
    IntervalResult itv = analyze(program);
    for (const auto& input : pc.inputs) {
      auto failures = testing::checkIntervals(program, itv, input, 20'000, &observations);
      INFO(pc.source);
      REQUIRE(failures.empty());
    }
  }
  CHECK(observations > 10'000);
}

TEST_CASE("analysis terminates on every corpus file", "[interval_analysis]") {
  for (const auto& path : corpusFiles(LOOPCOUNT_CORPUS_DIR)) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    Program p = parse(ss.str(), path);
    IntervalResult itv = analyze(p);
    CHECK(itv.size() > 0);
  }
}
