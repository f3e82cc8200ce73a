#include "loopcount/fd_domain.hpp"

#include <utility>

namespace loopcount {

namespace {

/// (g, x) with a*x = g (mod m), g = gcd(a, m).
std::pair<Integer, Integer> extendedGcd(Integer a, Integer b) {
  Integer x0 = 1, x1 = 0;
  while (b != 0) {
    Integer q = floorDiv(a, b);
    a = std::exchange(b, a - q * b);
    x0 = std::exchange(x1, x0 - q * x1);
  }
  return {a, x0};
}

}  // namespace

std::optional<std::pair<Integer, Integer>> solveLinearCongruence(const Integer& a, const Integer& b,
                                                                 const Integer& m) {
  Integer am = floorMod(a, m);
  Integer g = gcd(am, m);
  if (g == 0) g = m;
  if (floorMod(b, g) != 0) return std::nullopt;
  Integer mg = m / g;
  if (mg == 1) return std::pair<Integer, Integer>{1, 0};
  auto [g2, inv] = extendedGcd(floorMod(am / g, mg), mg);
  (void)g2;
  return std::pair<Integer, Integer>{mg, floorMod((b / g) * inv, mg)};
}

FdDomain::FdDomain(Bound lo, Bound hi, Integer stride, Integer residue)
    : lo_(std::move(lo)), hi_(std::move(hi)), stride_(std::move(stride)), residue_(std::move(residue)) {
  if (stride_ < 1) stride_ = 1;
  normalize();
}

FdDomain FdDomain::empty() {
  FdDomain d(0, 0);
  d.empty_ = true;
  d.lo_ = 1;
  d.hi_ = 0;
  return d;
}

void FdDomain::normalize() {
  if (empty_) return;
  residue_ = floorMod(residue_, stride_);
  if (lo_.isPosInf() || hi_.isNegInf()) {
    *this = empty();
    return;
  }
  if (lo_.isFinite()) lo_ = lo_.value() + floorMod(residue_ - lo_.value(), stride_);
  if (hi_.isFinite()) hi_ = hi_.value() - floorMod(hi_.value() - residue_, stride_);
  if (lo_ > hi_) {
    *this = empty();
    return;
  }
  if (isSingleton()) {
    stride_ = 1;
    residue_ = 0;
  }
}

bool FdDomain::contains(const Integer& v) const {
  if (empty_) return false;
  return lo_ <= Bound(v) && Bound(v) <= hi_ && floorMod(v - residue_, stride_) == 0;
}

bool FdDomain::within(const FdDomain& other) const {
  if (empty_) return true;
  if (other.empty_) return false;
  if (lo_ < other.lo_ || hi_ > other.hi_) return false;
  if (isSingleton()) return other.contains(lo_.value());
  return stride_ % other.stride_ == 0 && floorMod(residue_ - other.residue_, other.stride_) == 0;
}

FdDomain FdDomain::withLowerBound(const Bound& lo) const {
  if (empty_ || lo <= lo_) return *this;
  FdDomain d = *this;
  d.lo_ = lo;
  d.normalize();
  return d;
}

FdDomain FdDomain::withUpperBound(const Bound& hi) const {
  if (empty_ || hi >= hi_) return *this;
  FdDomain d = *this;
  d.hi_ = hi;
  d.normalize();
  return d;
}

FdDomain FdDomain::withCongruence(const Integer& m, const Integer& r) const {
  if (empty_ || m <= 1) return *this;
  if (isSingleton()) return floorMod(lo_.value() - r, m) == 0 ? *this : empty();
  // x = residue + stride * k and x = r (mod m)  =>  stride * k = r - residue (mod m)
  auto k = solveLinearCongruence(stride_, r - residue_, m);
  if (!k) return empty();
  FdDomain d = *this;
  d.residue_ = residue_ + stride_ * k->second;
  d.stride_ = stride_ * k->first;
  d.normalize();
  return d;
}

FdDomain FdDomain::intersect(const FdDomain& other) const {
  if (other.empty_) return other;
  FdDomain d = withLowerBound(other.lo_).withUpperBound(other.hi_);
  if (other.isSingleton()) return d.contains(other.lo_.value()) ? other : empty();
  return d.withCongruence(other.stride_, other.residue_);
}

std::string FdDomain::toString() const {
  if (empty_) return "{}";
  std::string s = lo_.toString() + ".." + hi_.toString();
  if (stride_ > 1) s += " mod " + loopcount::toString(stride_) + " = " + loopcount::toString(residue_);
  return s;
}

bool operator==(const FdDomain& a, const FdDomain& b) {
  if (a.empty_ || b.empty_) return a.empty_ == b.empty_;
  return a.lo_ == b.lo_ && a.hi_ == b.hi_ && a.stride_ == b.stride_ && a.residue_ == b.residue_;
}

std::optional<Integer> domainCount(const FdDomain& d) {
  if (d.isEmpty()) return Integer(0);
  if (!d.isFinite()) return std::nullopt;
  return (d.hi().value() - d.lo().value()) / d.stride() + 1;
}

}  // namespace loopcount
