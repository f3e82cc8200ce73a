#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cstdlib>

#include "oracles.hpp"
#include "loopcount/fd_text.hpp"

using namespace loopcount;

namespace {

FdDomain dom(long long lo, long long hi) { return FdDomain(Bound(lo), Bound(hi)); }

LinExpr v(FdVarId id, long long coef = 1) { return LinExpr::var(id, coef); }

}  // namespace

TEST_CASE("variables start unconstrained", "[fd_solver]") {
  Csp csp;
  FdVarId x = csp.newVar();
  CHECK(csp.domain(x) == FdDomain::top());
  CHECK(csp.post(ge(v(x), 0)) == Csp::Status::Ok);
  CHECK(csp.post(le(v(x), 10)) == Csp::Status::Ok);
  CHECK(csp.domain(x) == dom(0, 10));
  CHECK(csp.post(ge(v(x), 11)) == Csp::Status::Inconsistent);
  CHECK(csp.inconsistent());
  CHECK_THROWS_AS(csp.post(le(v(7), 1)), std::out_of_range);
  CHECK_THROWS_AS(csp.post(congruenceZero(v(x), 0)), std::invalid_argument);
}

TEST_CASE("congruence narrows to a strided domain", "[fd_solver]") {
  Csp csp;
  FdVarId x = csp.newVar(dom(0, 10));
  csp.post(congruenceZero(v(x), 2));
  CHECK(csp.domain(x) == FdDomain(Bound(0), Bound(10), 2, 0));

  Csp shifted;
  FdVarId y = shifted.newVar(dom(0, 10));
  shifted.post(congruenceZero(v(y) - 1, 3));
  CHECK(domainCount(shifted.domain(y)) == Integer(4));
  CHECK(shifted.domain(y).lo() == Bound(1));
}

TEST_CASE("bounds propagate through linear constraints", "[fd_solver]") {
  Csp csp;
  FdVarId x = csp.newVar(), y = csp.newVar();
  csp.post(le(v(x), v(y)));
  csp.post(le(v(y), 5));
  csp.post(ge(v(x), 0));
  CHECK(csp.domain(x) == dom(0, 5));
  CHECK(csp.domain(y) == dom(0, 5));

  Csp tri;
  FdVarId i = tri.newVar(dom(0, 9)), j = tri.newVar();
  tri.post(le(v(j), v(i)));
  tri.post(ge(v(j), 1));
  CHECK(tri.domain(j) == dom(1, 9));
  CHECK(tri.domain(i) == dom(1, 9));
}

TEST_CASE("cyclic constraints stop within the budget", "[fd_solver]") {
  Csp csp;
  FdVarId x = csp.newVar(), y = csp.newVar();
  csp.post(eq(v(x), v(y) + 1));
  Csp::Status s = csp.post(eq(v(y), v(x) + 1));
  // Unbounded domains: no contradiction is ever derived by bounds alone,
  // but propagation must terminate.
  CHECK((s == Csp::Status::Ok || s == Csp::Status::Inconsistent));
  CHECK(csp.lastFirings() <= static_cast<std::uint64_t>(2 * csp.config().propagationBudget + 4));

  Csp bounded;
  FdVarId a = bounded.newVar(dom(0, 1000)), b = bounded.newVar(dom(0, 1000));
  bounded.post(eq(v(a), v(b) + 1));
  bounded.post(eq(v(b), v(a) + 1));
  CountResult r = bounded.countSolutions({a, b});
  CHECK(r.ok());
  CHECK(r.count == 0);
}

TEST_CASE("counting with free variables avoids enumeration", "[fd_solver]") {
  TextCsp t = parseCsp("I >= 0\nI <= 10000\nJ >= 0\nJ <= 500\n");
  CountResult r = t.csp.countSolutions({t.id("I"), t.id("J")});
  REQUIRE(r.ok());
  CHECK(r.count == 5010501);
  CHECK(r.nodes < 100);
}

TEST_CASE("triangular iteration space of the worked nest", "[fd_solver]") {
  TextCsp t = parseCsp(R"(
    I >= 0
    I <= 9
    J <= I
    J >= 1
    (J - I) mod 2 = 0
  )");
  CountResult r = t.csp.countSolutions({t.id("I"), t.id("J")});
  REQUIRE(r.ok());
  CHECK(r.count == 25);
  EnumerateResult e = t.csp.enumerate({t.id("I"), t.id("J")});
  CHECK(e.solutions.size() == 25);
  CHECK(std::is_sorted(e.solutions.begin(), e.solutions.end()));
}

TEST_CASE("enumeration lists projected solutions in order", "[fd_solver]") {
  Csp csp;
  FdVarId x = csp.newVar(dom(1, 3)), y = csp.newVar(dom(0, 5));
  csp.post(le(v(y), v(x)));
  EnumerateResult onlyX = csp.enumerate({x});
  CHECK(onlyX.solutions == std::vector<std::vector<Integer>>{{1}, {2}, {3}});
  CHECK(csp.countSolutions({x, y}).count == 2 + 3 + 4);

  csp.post(ge(v(x), 4));
  CHECK(csp.inconsistent());
  CHECK(csp.enumerate({x}).solutions.empty());
  CHECK(csp.countSolutions({x}).count == 0);
}

TEST_CASE("unbounded and over-budget counts are reported", "[fd_solver]") {
  Csp csp;
  FdVarId x = csp.newVar(FdDomain(Bound(0), Bound::posInf()));
  CHECK(csp.countSolutions({x}).status == CountResult::Status::Unbounded);

  SolverConfig tight;
  tight.enumerationCap = 10;
  Csp capped(tight);
  FdVarId a = capped.newVar(dom(0, 100)), b = capped.newVar(dom(0, 100));
  capped.post(le(v(a) + v(b), 100));
  CHECK(capped.countSolutions({a, b}).status == CountResult::Status::BudgetExceeded);
}

TEST_CASE("random CSPs agree with brute force", "[fd_solver]") {
  testing::Rng rng(41);
  for (int k = 0; k < 200; ++k) {
    testing::RandomCsp rc = testing::randomCsp(rng);
    auto expected = testing::bruteForceSolutions(rc);
    Csp csp = testing::buildCsp(rc);
    std::vector<FdVarId> vars(rc.domains.size());
    for (std::size_t i = 0; i < vars.size(); ++i) vars[i] = static_cast<FdVarId>(i);
    CountResult count = csp.countSolutions(vars);
    EnumerateResult all = csp.enumerate(vars);
    INFO("case " << k);
    REQUIRE(count.ok());
    CHECK(count.count == Integer(expected.size()));
    CHECK(all.solutions == expected);
  }
}

TEST_CASE("posting order does not change the count", "[fd_solver]") {
  testing::Rng rng(42);
  for (int k = 0; k < 100; ++k) {
    testing::RandomCsp rc = testing::randomCsp(rng);
    testing::RandomCsp reversed = rc;
    std::reverse(reversed.constraints.begin(), reversed.constraints.end());
    std::vector<FdVarId> vars(rc.domains.size());
    for (std::size_t i = 0; i < vars.size(); ++i) vars[i] = static_cast<FdVarId>(i);
    CHECK(testing::buildCsp(rc).countSolutions(vars).count ==
          testing::buildCsp(reversed).countSolutions(vars).count);
  }
}

TEST_CASE("text format round-trips", "[fd_solver]") {
  TextCsp t = parseCsp("% comment\nX in 0..10 step 2\nY in -inf..5\n2*X - Y + 3 <= 7\n(X + Y) mod 3 = 0\n");
  CHECK(t.names == std::vector<std::string>{"X", "Y"});
  CHECK(t.csp.constraints().size() == 2);
  std::string printed = printCsp(t.csp, t.names);
  TextCsp again = parseCsp(printed);
  CHECK(again.csp.countSolutions({again.id("X"), again.id("Y")}).status ==
        t.csp.countSolutions({t.id("X"), t.id("Y")}).status);
  CHECK(printLinExpr(v(0, 2) - v(1) + 3, t.names) == "2*X - Y + 3");

  CHECK_THROWS_AS(parseCsp("X <= \n"), CspSyntaxError);
  try {
    parseCsp("X in 0..3\nX ?? 2\n");
    FAIL("no error");
  } catch (const CspSyntaxError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("budget can come from the environment", "[fd_solver]") {
  ::setenv("LOOPCOUNT_SOLVER_BUDGET", "7", 1);
  CHECK(SolverConfig::fromEnvironment().propagationBudget == 7);
  ::setenv("LOOPCOUNT_SOLVER_BUDGET", "junk", 1);
  CHECK(SolverConfig::fromEnvironment().propagationBudget == SolverConfig{}.propagationBudget);
  ::unsetenv("LOOPCOUNT_SOLVER_BUDGET");
  CHECK(SolverConfig::fromEnvironment().propagationBudget == SolverConfig{}.propagationBudget);
}
