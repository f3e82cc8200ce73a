#include <catch_amalgamated.hpp>

#include "generators.hpp"
#include "loopcount/fd_domain.hpp"

using namespace loopcount;

namespace {

FdDomain dom(long long lo, long long hi, long long stride = 1, long long residue = 0) {
  return FdDomain(Bound(lo), Bound(hi), stride, residue);
}

std::vector<long long> members(const FdDomain& d, long long from, long long to) {
  std::vector<long long> out;
  for (long long v = from; v <= to; ++v) {
    if (d.contains(v)) out.push_back(v);
  }
  return out;
}

}  // namespace

TEST_CASE("domain sizes", "[fd_domain]") {
  CHECK(domainCount(dom(0, 10, 2)) == Integer(6));
  CHECK(domainCount(dom(5, 5)) == Integer(1));
  CHECK(domainCount(dom(3, 2)) == Integer(0));
  CHECK(dom(3, 2).isEmpty());
  CHECK(domainCount(dom(-7, 7)) == Integer(15));
  CHECK_FALSE(domainCount(FdDomain::top()));
  CHECK_FALSE(domainCount(FdDomain(Bound(0), Bound::posInf())));
}

TEST_CASE("endpoints are tightened to members", "[fd_domain]") {
  FdDomain d = dom(1, 10, 3, 0);
  CHECK(d.lo() == Bound(3));
  CHECK(d.hi() == Bound(9));
  CHECK(domainCount(d) == Integer(3));
  // No member of the progression in range.
  CHECK(dom(1, 2, 5, 0).isEmpty());
  // Singletons use stride 1.
  FdDomain s = dom(4, 10, 7, 4);
  CHECK(s.isSingleton());
  CHECK(s.stride() == 1);
}

TEST_CASE("bound updates keep the congruence", "[fd_domain]") {
  FdDomain d = dom(0, 20, 4);
  CHECK(d.withLowerBound(Bound(5)).lo() == Bound(8));
  CHECK(d.withUpperBound(Bound(15)).hi() == Bound(12));
  CHECK(d.withLowerBound(Bound(21)).isEmpty());
}

TEST_CASE("congruences combine by the Chinese remainder theorem", "[fd_domain]") {
  FdDomain d = dom(0, 100).withCongruence(3, 2).withCongruence(5, 4);
  CHECK(d.stride() == 15);
  CHECK(d.lo() == Bound(14));
  CHECK(members(d, 0, 100) == std::vector<long long>{14, 29, 44, 59, 74, 89});

  // Non-coprime moduli with compatible residues.
  FdDomain e = dom(0, 40).withCongruence(4, 1).withCongruence(6, 3);
  CHECK(e.stride() == 12);
  CHECK(members(e, 0, 40) == std::vector<long long>{9, 21, 33});

  // Incompatible residues.
  CHECK(dom(0, 40).withCongruence(4, 1).withCongruence(6, 2).isEmpty());
  // Residues are normalised.
  CHECK(dom(-10, 10).withCongruence(3, -1) == dom(-10, 10).withCongruence(3, 2));
}

TEST_CASE("intersection agrees with membership", "[fd_domain]") {
  testing::Rng rng(21);
  auto randomDomain = [&] {
    int lo = testing::uniform(rng, -20, 10);
    int hi = lo + testing::uniform(rng, -2, 30);
    int stride = testing::uniform(rng, 1, 6);
    int residue = testing::uniform(rng, -6, 6);
    return dom(lo, hi, stride, residue);
  };
  for (int k = 0; k < 500; ++k) {
    FdDomain a = randomDomain(), b = randomDomain();
    FdDomain both = a.intersect(b);
    for (long long v = -30; v <= 50; ++v) {
      INFO(a.toString() << " & " << b.toString() << " at " << v);
      CHECK(both.contains(v) == (a.contains(v) && b.contains(v)));
    }
    CHECK(both.within(a));
    CHECK(both.within(b));
    if (both.isFinite()) {
      CHECK(*domainCount(both) == Integer(members(both, -30, 50).size()));
    }
  }
}

TEST_CASE("linear congruences", "[fd_domain]") {
  // 4x = 2 (mod 6): x = 2 (mod 3)
  auto r = solveLinearCongruence(4, 2, 6);
  REQUIRE(r);
  CHECK(r->first == 3);
  CHECK(r->second == 2);
  CHECK_FALSE(solveLinearCongruence(2, 1, 4));
  auto any = solveLinearCongruence(0, 0, 5);
  REQUIRE(any);
  CHECK(any->first == 1);

  for (int a = -6; a <= 6; ++a) {
    for (int b = -6; b <= 6; ++b) {
      for (int m = 1; m <= 7; ++m) {
        auto s = solveLinearCongruence(a, b, m);
        for (int x = -20; x <= 20; ++x) {
          bool solves = ((a * x - b) % m) == 0;
          bool member = s && ((x - static_cast<int>(s->second)) % static_cast<int>(s->first)) == 0;
          CHECK(solves == member);
        }
      }
    }
  }
}

TEST_CASE("domains print compactly", "[fd_domain]") {
  CHECK(dom(0, 10).toString() == "0..10");
  CHECK(dom(0, 10, 2).toString().find("mod 2 = 0") != std::string::npos);
  CHECK(FdDomain::empty().toString() == "{}");
  CHECK(FdDomain::top().toString() == "-inf..+inf");
}
