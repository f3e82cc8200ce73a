#include <catch_amalgamated.hpp>

#include "generators.hpp"
#include "loopcount/interval.hpp"
#include "loopcount/parser.hpp"

using namespace loopcount;

namespace {

Interval iv(long long lo, long long hi) { return Interval(Bound(lo), Bound(hi)); }
Interval atLeast(long long lo) { return Interval(Bound(lo), Bound::posInf()); }
Interval atMost(long long hi) { return Interval(Bound::negInf(), Bound(hi)); }

AbstractState stateOf(std::initializer_list<std::pair<const char*, Interval>> vars) {
  AbstractState s;
  for (const auto& [n, v] : vars) s.set(n, v);
  return s;
}

ExprPtr expr(const std::string& text) {
  Program p = parse("int main(int x, int y, int z) { return " + text + "; }");
  return p.functions[0].body->as<Block>()->stmts[0]->as<Return>()->value;
}

Interval randomInterval(testing::Rng& rng) {
  int lo = testing::uniform(rng, -12, 12);
  return iv(lo, lo + testing::uniform(rng, 0, 10));
}

}  // namespace

TEST_CASE("bounds are totally ordered", "[interval]") {
  CHECK(Bound::negInf() < Bound(-1000));
  CHECK(Bound(-1000) < Bound(7));
  CHECK(Bound(7) < Bound::posInf());
  CHECK(Bound(3) == Bound(3));
  CHECK(Bound::posInf() + Bound(5) == Bound::posInf());
  CHECK(Bound::negInf() * Bound(-2) == Bound::posInf());
  CHECK(Bound(0) * Bound::posInf() == Bound(0));
}

TEST_CASE("combine takes the hull", "[interval]") {
  CHECK(combine(iv(1, 3), iv(5, 9)) == iv(1, 9));
  CHECK(combine(Interval::bottom(), iv(2, 4)) == iv(2, 4));
  CHECK(combine(atMost(0), atLeast(0)) == Interval::top());

  AbstractState s = stateOf({{"x", iv(1, 3)}});
  CHECK(combine(AbstractState::bottom(), s) == s);
  CHECK(combine(s, AbstractState::bottom()) == s);
  CHECK(combine(stateOf({{"x", iv(1, 3)}}), stateOf({{"x", iv(5, 9)}})).get("x") == iv(1, 9));
  // A variable bound on only one side becomes top.
  CHECK(combine(stateOf({{"x", iv(1, 3)}}), AbstractState::top()).get("x").isTop());
}

TEST_CASE("combine is commutative, associative and idempotent", "[interval]") {
  testing::Rng rng(5);
  for (int k = 0; k < 300; ++k) {
    Interval a = randomInterval(rng), b = randomInterval(rng), c = randomInterval(rng);
    CHECK(combine(a, b) == combine(b, a));
    CHECK(combine(combine(a, b), c) == combine(a, combine(b, c)));
    CHECK(combine(a, a) == a);
    CHECK(combine(a, Interval::top()).isTop());
  }
}

TEST_CASE("widening jumps changed bounds to infinity", "[interval]") {
  CHECK(widen(iv(0, 5), iv(0, 7)) == atLeast(0));
  CHECK(widen(iv(0, 5), iv(0, 5)) == iv(0, 5));
  CHECK(widen(iv(0, 5), iv(-1, 5)) == atMost(5));
  CHECK(widen(Interval::bottom(), iv(2, 3)) == iv(2, 3));

  testing::Rng rng(6);
  for (int k = 0; k < 300; ++k) {
    Interval a = randomInterval(rng), b = randomInterval(rng);
    Interval w = widen(a, combine(a, b));
    CHECK(widen(a, a) == a);
    CHECK(a.within(w));
    CHECK(b.within(w));
  }
}

TEST_CASE("interval arithmetic", "[interval]") {
  CHECK(iv(1, 2) + iv(3, 4) == iv(4, 6));
  CHECK(iv(1, 2) - iv(3, 4) == iv(-3, -1));
  CHECK(-iv(1, 2) == iv(-2, -1));
  // All four corner products; two products would miss 3 * -5.
  CHECK(iv(-2, 3) * iv(-5, 4) == iv(-15, 12));
  CHECK(iv(7, 9) / iv(2, 2) == iv(3, 4));
  CHECK(iv(-7, 7) / iv(2, 3) == iv(-3, 3));
  CHECK((iv(1, 10) / iv(-1, 1)).isTop());
  CHECK(atLeast(3) + iv(1, 1) == atLeast(4));
}

TEST_CASE("interval operators are sound on samples", "[interval]") {
  testing::Rng rng(7);
  for (int k = 0; k < 400; ++k) {
    Interval a = randomInterval(rng), b = randomInterval(rng);
    for (int s = 0; s < 10; ++s) {
      Integer x = testing::uniform(rng, static_cast<int>(a.lo().value()), static_cast<int>(a.hi().value()));
      Integer y = testing::uniform(rng, static_cast<int>(b.lo().value()), static_cast<int>(b.hi().value()));
      CHECK((a + b).contains(x + y));
      CHECK((a - b).contains(x - y));
      CHECK((a * b).contains(x * y));
      if (y != 0) {
        CHECK((a / b).contains(truncDiv(x, y)));
        CHECK((a % b).contains(truncMod(x, y)));
      }
    }
  }
}

TEST_CASE("comparisons evaluate to three-valued booleans", "[interval]") {
  CHECK(compare(Relation::Lt, iv(0, 3), iv(5, 9)) == AbstractBool::True);
  CHECK(compare(Relation::Lt, iv(5, 9), iv(0, 3)) == AbstractBool::False);
  CHECK(compare(Relation::Lt, iv(0, 5), iv(5, 9)) == AbstractBool::Unknown);
  CHECK(compare(Relation::Le, iv(0, 5), iv(5, 9)) == AbstractBool::True);
  CHECK(compare(Relation::Eq, iv(4, 4), iv(4, 4)) == AbstractBool::True);
  CHECK(compare(Relation::Eq, iv(0, 3), iv(4, 9)) == AbstractBool::False);
  CHECK(compare(Relation::Ne, iv(0, 3), iv(4, 9)) == AbstractBool::True);
  CHECK(compare(Relation::Ge, iv(5, 9), iv(0, 5)) == AbstractBool::True);
  CHECK(compare(Relation::Gt, iv(5, 9), iv(0, 5)) == AbstractBool::Unknown);
  CHECK(toInterval(AbstractBool::True) == iv(1, 1));
  CHECK(toInterval(AbstractBool::False) == iv(0, 0));
  CHECK(toInterval(AbstractBool::Unknown).isTop());
}

TEST_CASE("expression evaluation over a state", "[interval]") {
  AbstractState s = stateOf({{"x", iv(0, 3)}, {"y", iv(5, 9)}});
  CHECK(evalExpr(*expr("x + 1"), s) == iv(1, 4));
  CHECK(evalExpr(*expr("x < y"), s) == iv(1, 1));
  CHECK(evalExpr(*expr("x > y"), s) == iv(0, 0));
  CHECK(evalExpr(*expr("x == 1"), s).isTop());
  CHECK(evalExpr(*expr("!(x < y)"), s) == iv(0, 0));
  CHECK(evalExpr(*expr("x < y && y < 10"), s) == iv(1, 1));
  CHECK(evalExpr(*expr("z"), s).isTop());
  CHECK(evalExpr(*expr("x * y - 2"), s) == iv(-2, 25));
}

TEST_CASE("branch filtering refines the compared variable", "[interval]") {
  AbstractState s = stateOf({{"x", iv(0, 20)}, {"y", iv(5, 9)}});
  CHECK(filter(*expr("x < y"), s, true).get("x") == iv(0, 8));
  CHECK(filter(*expr("x < y"), s, false).get("x") == iv(5, 20));
  CHECK(filter(*expr("10 > x"), s, true).get("x") == iv(0, 9));
  CHECK(filter(*expr("x == 4"), s, true).get("x") == iv(4, 4));
  CHECK(filter(*expr("x > 30"), s, true).isBottom());
  CHECK(filter(*expr("0"), s, true).isBottom());
  CHECK(filter(*expr("1"), s, false).isBottom());
  // Compound conditions are not refined.
  CHECK(filter(*expr("x < 3 && y < 7"), s, true).get("x") == iv(0, 20));
}

TEST_CASE("a bottom binding collapses the state", "[interval]") {
  AbstractState s;
  s.set("x", iv(1, 2));
  s.set("y", Interval::bottom());
  CHECK(s.isBottom());
}
