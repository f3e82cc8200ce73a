#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "pipeline.hpp"
#include "loopcount/loopbound.hpp"
#include "loopcount/simplify.hpp"
#include "loopcount/unparse.hpp"

using namespace loopcount;
using testing::Pipeline;

namespace {

BoundResult boundOf(const std::string& body, const std::string& decls = "int i;") {
  Pipeline pl("int main(int n) { " + decls + " " + body + " return 0; }");
  REQUIRE(pl.loops.at(0).descriptor());
  return loopBound(pl.descriptor(0), *pl.index, pl.itv);
}

Integer nOf(const std::string& body, const std::string& decls = "int i;") {
  BoundResult r = boundOf(body, decls);
  REQUIRE(r.isBound());
  return r.n();
}

ExprPtr parseExpr(const std::string& text) {
  Program p = parse("int main(int x, int y) { return " + text + "; }");
  return p.functions[0].body->as<Block>()->stmts[0]->as<Return>()->value;
}

bool allInvariant(const Expr&) { return true; }

}  // namespace

TEST_CASE("loop parameters per relation", "[loopbound]") {
  auto a = makeLit(0), b = makeLit(10), c = makeLit(1);
  LoopParams lt = deriveParams(Relation::Lt, a, b, c);
  CHECK(unparseExpr(*lt.lowExpr) == "0");
  CHECK(unparseExpr(*lt.highExpr) == "10");
  CHECK(unparseExpr(*lt.stepExpr) == "1");
  CHECK(lt.correction == 0);

  LoopParams le = deriveParams(Relation::Le, a, b, c);
  CHECK(unparseExpr(*le.lowExpr) == "0");
  CHECK(unparseExpr(*le.highExpr) == "10 + 1");

  LoopParams gt = deriveParams(Relation::Gt, makeLit(10), makeLit(0), makeLit(-1));
  CHECK(unparseExpr(*gt.lowExpr) == "0");
  CHECK(unparseExpr(*gt.highExpr) == "10");

  LoopParams ge = deriveParams(Relation::Ge, makeLit(10), makeLit(1), makeLit(-1));
  CHECK(unparseExpr(*ge.lowExpr) == "1");
  CHECK(unparseExpr(*ge.highExpr) == "10 - 1");
  CHECK(ge.correction == 2);
}

TEST_CASE("simplification rules", "[loopbound]") {
  auto s = [](const std::string& e) { return unparseExpr(*simplify(parseExpr(e), allInvariant)); };
  CHECK(s("(x + 5) - x") == "5");
  CHECK(s("x * 1") == "x");
  CHECK(s("x + 0") == "x");
  CHECK(s("(3 + 4) / 1") == "7");
  CHECK(s("0 * y") == "0");
  CHECK(s("-(-x)") == "x");
  CHECK(s("(2 * x + 4) / 2") == "x + 2");
  CHECK(s("(x + 1) - (x - 1)") == "2");

  // Cancellation needs invariance.
  auto noneInvariant = [](const Expr& e) { return e.is<IntLit>(); };
  CHECK(unparseExpr(*simplify(parseExpr("(x + 5) - x"), noneInvariant)) != "5");
}

TEST_CASE("simplification preserves values", "[loopbound]") {
  testing::Rng rng(11);
  const std::vector<std::string> shapes = {
      "(x + 3) - (x - 2)", "2 * (x + y) - y",     "(x * 4 + 8) / 4",     "-(x - y) + (y - x)",
      "(x - 1) * 3 - x",   "((x + 1) + 2) + 3",   "x / 3 - x / 3 + y",   "(y + 10 - 1) - (x + 1)",
      "0 - (x * 2)",       "(x + y) * 1 + 0 * x", "(6 * x - 3) / 3",     "x % 4 + 2 - 2"};
  for (const auto& shape : shapes) {
    ExprPtr e = parseExpr(shape);
    ExprPtr simple = simplify(e, allInvariant);
    for (int k = 0; k < 50; ++k) {
      AbstractState s;
      int x = testing::uniform(rng, -50, 50), y = testing::uniform(rng, -50, 50);
      s.set("x", Interval::constant(x));
      s.set("y", Interval::constant(y));
      INFO(shape << " -> " << unparseExpr(*simple) << " at x=" << x << " y=" << y);
      CHECK(evalExpr(*e, s) == evalExpr(*simple, s));
    }
  }
}

TEST_CASE("closed-form bounds", "[loopbound]") {
  CHECK(nOf("for (i = 0; i < 10; ++i) ;") == 10);
  CHECK(nOf("for (i = 0; i < 10; i += 3) ;") == 4);
  CHECK(nOf("for (i = 0; i <= 10; i++) ;") == 11);
  CHECK(nOf("for (i = 10; i >= 1; i--) ;") == 10);
  CHECK(nOf("for (i = 10; i > 0; i -= 2) ;") == 5);
  CHECK(nOf("for (i = 0; i != 9; i += 3) ;") == 3);
  CHECK(nOf("for (i = 5; i < 5; i++) ;") == 0);
}

TEST_CASE("inner loop of the triangular nest is bounded by its widest range", "[loopbound]") {
  Pipeline pl("int main() { int i; int j; for (i = 0; i < 10; ++i) for (j = i; j > 0; j -= 2) ; return 0; }");
  BoundResult outer = loopBound(pl.descriptor(0), *pl.index, pl.itv);
  BoundResult inner = loopBound(pl.descriptor(1), *pl.index, pl.itv);
  CHECK(outer == BoundResult::bound(10));
  CHECK(inner == BoundResult::bound(5));
}

TEST_CASE("unknown inputs give no finite bound", "[loopbound]") {
  BoundResult r = boundOf("if (n < 0) n = 0; for (i = 0; i < n; i++) ;");
  CHECK(r.kind() == BoundResult::Kind::Unbounded);
  CHECK_FALSE(r.isBound());

  AbstractState s;
  LoopParams p = deriveParams(Relation::Lt, makeLit(0), makeVar("n"), makeLit(1));
  CHECK(evaluateBound(p, false, s, allInvariant).kind() == BoundResult::Kind::NotApplicable);
}

TEST_CASE("clamped inputs give finite bounds", "[loopbound]") {
  CHECK(nOf("if (n < 0) n = 0; if (n > 40) n = 40; for (i = 0; i < n; i++) ;") == 40);
  CHECK(nOf("if (n < 1) n = 1; if (n > 3) n = 3; for (i = 0; i < 30; i = i + n) ;") == 30);
}

TEST_CASE("minimum over alternative exit conditions", "[loopbound]") {
  CHECK(nOf("int j; j = 0; for (i = 0; i < 100 && j < 10; i++) { j = j + 1; }") == 10);
}

TEST_CASE("widening input intervals never lowers the bound", "[loopbound]") {
  LoopParams p = deriveParams(Relation::Lt, makeVar("x"), makeVar("y"), makeLit(2));
  testing::Rng rng(12);
  for (int k = 0; k < 200; ++k) {
    int xl = testing::uniform(rng, -20, 0), xh = xl + testing::uniform(rng, 0, 5);
    int yl = testing::uniform(rng, 5, 20), yh = yl + testing::uniform(rng, 0, 5);
    AbstractState narrow, wide;
    narrow.set("x", Interval(Bound(xl), Bound(xh)));
    narrow.set("y", Interval(Bound(yl), Bound(yh)));
    wide.set("x", Interval(Bound(xl - testing::uniform(rng, 0, 5)), Bound(xh)));
    wide.set("y", Interval(Bound(yl), Bound(yh + testing::uniform(rng, 0, 5))));
    BoundResult a = evaluateBound(p, false, narrow, allInvariant);
    BoundResult b = evaluateBound(p, false, wide, allInvariant);
    REQUIRE(a.isBound());
    REQUIRE(b.isBound());
    CHECK(a.n() <= b.n());
  }
}

TEST_CASE("exact on the rectangular case", "[loopbound]") {
  for (int a = -6; a <= 6; ++a) {
    for (int b = a; b <= a + 8; ++b) {
      for (const char* rel : {"<", "<="}) {
        std::string src = "int main() { int i; for (i = " + std::to_string(a) + "; i " + rel + " " +
                          std::to_string(b) + "; i++) ; return 0; }";
        FileReport f = analyzeSource(src, "r.c");
        ExecutionProfile prof = interpret(*f.program, {});
        REQUIRE(f.loops[0].bounded());
        CHECK(f.loops[0].loopbound->n() == testing::bodyCount(*f.program, prof, f.loops[0].label));
      }
    }
  }
}

TEST_CASE("random loops never run past their bound", "[loopbound]") {
  testing::Rng rng(13);
  std::size_t comparisons = 0;
  for (int k = 0; k < 300; ++k) {
    testing::ProgramCase pc = testing::randomLoop(rng);
    FileReport f = analyzeSource(pc.source, "l.c");
    testing::BoundCheck c = testing::checkBounds(f, pc.inputs);
    comparisons += c.comparisons;
    INFO(pc.source);
    REQUIRE(c.failures.empty());
  }
  CHECK(comparisons > 300);
}

TEST_CASE("bound results serialise", "[loopbound]") {
  CHECK(BoundResult::bound(7).toJson()["n"] == 7);
  CHECK(BoundResult::bound(7).toJson()["status"] == "bound");
  CHECK(BoundResult::unbounded().toJson()["n"].is_null());
  CHECK(BoundResult::notApplicable("x").toJson()["reason"] == "x");
}
