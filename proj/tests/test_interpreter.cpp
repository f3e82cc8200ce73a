#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "pipeline.hpp"

using namespace loopcount;
using testing::Pipeline;

TEST_CASE("body counts of the triangular nest", "[interpreter]") {
  Pipeline pl("int main() { int i; int j; for (i = 0; i < 10; ++i) for (j = i; j > 0; j -= 2) ; return 0; }");
  ExecutionProfile prof = interpret(*pl.program, {});
  REQUIRE(prof.terminated());
  CHECK(testing::bodyCount(*pl.program, prof, pl.loops[0].loop->label) == 10);
  CHECK(testing::bodyCount(*pl.program, prof, pl.loops[1].loop->label) == 25);
  CHECK(prof.count(pl.loops[1].loop->label) == 10);                  // entries
  CHECK(prof.count(pl.loop(1).condLabel) == 25 + 10);                // tests
  CHECK(prof.returnValue == Integer(0));
}

TEST_CASE("empty program", "[interpreter]") {
  Program p = parse("");
  ExecutionProfile prof = interpret(p, {});
  CHECK(prof.terminated());
  CHECK(prof.counts.empty());
  CHECK_FALSE(prof.returnValue);
}

TEST_CASE("strided loop and parameters", "[interpreter]") {
  Pipeline pl("int main(int n) { int i; int s; s = 0; for (i = 0; i < n; i += 3) s = s + i; return s; }");
  ExecutionProfile prof = interpret(*pl.program, {{"n", 10}});
  CHECK(testing::bodyCount(*pl.program, prof, pl.loops[0].loop->label) == 4);
  CHECK(prof.returnValue == Integer(0 + 3 + 6 + 9));
}

TEST_CASE("C semantics for division and remainder", "[interpreter]") {
  Program p = parse("int main(int a, int b) { return a / b * 100 + a % b; }");
  CHECK(interpret(p, {{"a", -7}, {"b", 2}}).returnValue == Integer(-3 * 100 - 1));
  CHECK(interpret(p, {{"a", 7}, {"b", -2}}).returnValue == Integer(-3 * 100 + 1));
  ExecutionProfile byZero = interpret(p, {{"a", 1}, {"b", 0}});
  CHECK(byZero.outcome == ExecutionProfile::Outcome::DivisionByZero);
  CHECK_FALSE(byZero.terminated());
}

TEST_CASE("fuel bounds the run", "[interpreter]") {
  Program p = parse("int main() { while (1) ; return 0; }");
  InterpreterOptions opts;
  opts.fuel = 500;
  ExecutionProfile prof = interpret(p, {}, opts);
  CHECK(prof.outcome == ExecutionProfile::Outcome::FuelExhausted);
  CHECK(prof.fuelUsed <= 501);
}

TEST_CASE("recursion depth is limited", "[interpreter]") {
  Program p = parse("int f(int n) { int r; r = f(n + 1); return r; } int main() { int x; x = f(0); return x; }");
  InterpreterOptions opts;
  opts.maxCallDepth = 50;
  CHECK(interpret(p, {}, opts).outcome == ExecutionProfile::Outcome::CallDepthExceeded);

  Program fact = parse(
      "int f(int n) { int r; if (n <= 1) return 1; r = f(n - 1); return n * r; } "
      "int main(int n) { int x; x = f(n); return x; }");
  CHECK(interpret(fact, {{"n", 25}}).returnValue == Integer("15511210043330985984000000"));
}

TEST_CASE("globals, arrays and pointer parameters", "[interpreter]") {
  Program p = parse(R"(
    int g = 2;
    int a[4];
    int bump(int *p) { g = g + 1; return 0; }
    int main() { int x; int r; a[1] = 5; a[2] += a[1]; r = bump(&x); return g * 10 + a[2]; })");
  ExecutionProfile prof = interpret(p, {});
  REQUIRE(prof.terminated());
  CHECK(prof.returnValue == Integer(35));
  CHECK(interpret(p, {{"g", 7}}).returnValue == Integer(85));
}

TEST_CASE("break leaves only the innermost loop", "[interpreter]") {
  Pipeline pl(R"(
    int main() {
      int i; int j; int s = 0;
      for (i = 0; i < 4; i++) { for (j = 0; j < 10; j++) { if (j == 2) break; s = s + 1; } }
      return s;
    })");
  ExecutionProfile prof = interpret(*pl.program, {});
  CHECK(prof.returnValue == Integer(8));
  CHECK(testing::bodyCount(*pl.program, prof, pl.loops[1].loop->label) == 12);
}

TEST_CASE("observer sees every statement", "[interpreter]") {
  Program p = parse("int main() { int x; x = 1; x = x + 1; return x; }");
  std::vector<Integer> seen;
  InterpreterOptions opts;
  opts.observer = [&](Label, const Environment& locals, const Environment&) {
    auto it = locals.find("x");
    seen.push_back(it == locals.end() ? Integer(-1) : it->second);
  };
  interpret(p, {}, opts);
  REQUIRE(seen.size() >= 3);
  CHECK(std::find(seen.begin(), seen.end(), Integer(1)) != seen.end());
  CHECK(std::find(seen.begin(), seen.end(), Integer(2)) != seen.end());
}
