#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "pipeline.hpp"
#include "loopcount/fd_text.hpp"
#include "loopcount/flowcon.hpp"

using namespace loopcount;
using testing::Pipeline;

namespace {

const char* kTriangular = R"(
  int main() {
    int i; int j;
    for (i = 0; i < 10; ++i)
      for (j = i; j > 0; j -= 2)
        ;
    return 0;
  })";

std::vector<const LoopDescriptor*> nestEndingAt(const Pipeline& pl, std::size_t k) {
  return nestOf(pl.descriptor(k), pl.loops);
}

}  // namespace

TEST_CASE("nest translation lists bounds and congruences per level", "[flowcon]") {
  Pipeline pl(kTriangular);
  auto t = translateNest(nestEndingAt(pl, 1), *pl.index, pl.itv);
  REQUIRE(std::holds_alternative<NestTranslation>(t));
  const NestTranslation& tr = std::get<NestTranslation>(t);
  REQUIRE(tr.levels.size() == 2);
  CHECK(tr.names == std::vector<std::string>{"i", "j"});
  CHECK(tr.varMap.at("i") == tr.levels[0].var);
  CHECK(tr.levels[0].bounds.size() == 2);
  CHECK(tr.levels[0].exact);
  CHECK(tr.levels[1].congruence);
  CHECK(tr.levels[1].exact);
  std::string text = printCsp(tr.csp, tr.names);
  CHECK(text.find("j <= i") != std::string::npos);
  CHECK(text.find("mod 2 = 0") != std::string::npos);
}

TEST_CASE("flow constraints of the triangular nest", "[flowcon]") {
  Pipeline pl(kTriangular);
  auto results = analyzeNest(nestEndingAt(pl, 1), *pl.index, pl.itv);
  REQUIRE(results.size() == 2);
  REQUIRE(results[0].ok());
  REQUIRE(results[1].ok());
  CHECK(results[0].constraint.n == 10);
  CHECK(results[1].constraint.n == 25);
  CHECK(results[1].constraint.depth == 2);
  CHECK(results[1].constraint.loopLabel == pl.loops[1].loop->label);
  CHECK(results[1].constraint.relativeTo == pl.loops[0].loop->label);
  CHECK(results[1].constraint.exact);
  // The product of per-loop bounds is looser.
  CHECK(loopBound(pl.descriptor(0), *pl.index, pl.itv).n() * loopBound(pl.descriptor(1), *pl.index, pl.itv).n() ==
        50);
}

TEST_CASE("rectangular nest is counted exactly", "[flowcon]") {
  Pipeline pl("int main() { int i; int j; for (i = 0; i < 5; i++) for (j = 3; j <= 12; j++) ; return 0; }");
  auto results = analyzeNest(nestEndingAt(pl, 1), *pl.index, pl.itv);
  REQUIRE(results.back().ok());
  CHECK(results.back().constraint.n == 50);
  CHECK(results.back().constraint.exact);
}

TEST_CASE("single loops degenerate to loop bounds", "[flowcon]") {
  Pipeline pl("int main() { int i; int k; for (i = 0; i < 10; i++) ; for (k = 10; k > 0; k -= 3) ; "
              "for (i = 4; i < 4; i++) ; return 0; }");
  CHECK(degenerateToLoopBound(pl.descriptor(0), *pl.index, pl.itv) == BoundResult::bound(10));
  CHECK(degenerateToLoopBound(pl.descriptor(1), *pl.index, pl.itv) == BoundResult::bound(4));
  CHECK(degenerateToLoopBound(pl.descriptor(2), *pl.index, pl.itv) == BoundResult::bound(0));
}

TEST_CASE("an uncertain start drops the stride", "[flowcon]") {
  Pipeline pl("int main(int k) { int i; if (k < 2) k = 2; if (k > 4) k = 4; "
              "for (i = k; i <= 10; i += 2) ; return 0; }");
  auto results = analyzeNest(nestEndingAt(pl, 0), *pl.index, pl.itv);
  REQUIRE(results[0].ok());
  CHECK(results[0].constraint.n == 9);
  CHECK_FALSE(results[0].constraint.exact);

  LevelConstraints level;
  level.congruence = congruenceZero(LinExpr::var(0) - 2, 2);
  level.exact = false;
  applyStrideOverestimation(level);
  CHECK_FALSE(level.congruence);
  CHECK_FALSE(level.exact);
}

TEST_CASE("nests stop at a rejected ancestor", "[flowcon]") {
  Pipeline pl(R"(
    int main(int n) {
      int i; int j;
      for (i = 0; i != n; i++)
        for (j = 0; j < 4; j++)
          ;
      return 0;
    })");
  REQUIRE(pl.loops[0].rejection());
  auto nest = nestEndingAt(pl, 1);
  REQUIRE(nest.size() == 1);
  CHECK(nest[0]->loopLabel == pl.loops[1].loop->label);
  auto results = analyzeNest(nest, *pl.index, pl.itv);
  REQUIRE(results[0].ok());
  CHECK(results[0].constraint.n == 4);
}

TEST_CASE("unknown outer ranges are not counted", "[flowcon]") {
  Pipeline pl("int main(int n) { int i; if (n < 0) n = 0; for (i = 0; i < n; i++) ; return 0; }");
  auto results = analyzeNest(nestEndingAt(pl, 0), *pl.index, pl.itv);
  CHECK_FALSE(results[0].ok());
  CHECK(results[0].status != FlowResult::Status::Ok);
  CHECK_FALSE(results[0].reason.empty());
  nlohmann::json j = results[0].toJson();
  CHECK(j.contains("status"));
}

TEST_CASE("flow constraints never exceed the product of loop bounds", "[flowcon]") {
  testing::Rng rng(51);
  for (int k = 0; k < 150; ++k) {
    testing::NestCase nc = testing::randomNest(rng, k % 2 == 0);
    Pipeline pl(nc.program.source);
    for (std::size_t l = 0; l < pl.loops.size(); ++l) {
      if (!pl.loops[l].descriptor()) continue;
      auto nest = nestEndingAt(pl, l);
      auto results = analyzeNest(nest, *pl.index, pl.itv);
      if (!results.back().ok()) continue;
      Integer product = 1;
      bool allBounded = true;
      for (const LoopDescriptor* d : nest) {
        BoundResult b = loopBound(*d, *pl.index, pl.itv);
        if (!b.isBound()) {
          allBounded = false;
          break;
        }
        product *= b.n();
      }
      INFO(nc.program.source);
      if (allBounded && results.back().constraint.exact) CHECK(results.back().constraint.n <= product);
    }
  }
}

TEST_CASE("random nests: flow constraints are sound and exact where expected", "[flowcon]") {
  testing::Rng rng(52);
  for (int k = 0; k < 150; ++k) {
    bool exactClass = k % 2 == 0;
    testing::NestCase nc = testing::randomNest(rng, exactClass);
    FileReport f = analyzeSource(nc.program.source, "n.c");
    testing::BoundCheck c = testing::checkBounds(f, nc.program.inputs);
    INFO(nc.program.source);
    REQUIRE(c.failures.empty());
    if (!exactClass) continue;
    ExecutionProfile prof = interpret(*f.program, nc.program.inputs.at(0));
    REQUIRE(prof.terminated());
    const LoopRecord& inner = f.loops.back();
    REQUIRE(inner.constrained());
    CHECK(inner.flow->constraint.exact);
    CHECK(inner.flow->constraint.n == testing::bodyCount(*f.program, prof, inner.label));
  }
}
