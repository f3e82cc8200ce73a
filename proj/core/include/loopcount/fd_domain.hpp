#pragma once

#include <optional>
#include <string>

#include "loopcount/bound.hpp"
#include "loopcount/integer.hpp"

namespace loopcount {

/// Strided interval { x | lo <= x <= hi, x = residue (mod stride) } or the
/// empty domain. Finite endpoints are always members; singletons use stride 1.
class FdDomain {
 public:
  /// All integers.
  FdDomain() : lo_(Bound::negInf()), hi_(Bound::posInf()) {}
  FdDomain(Bound lo, Bound hi, Integer stride = 1, Integer residue = 0);

  static FdDomain top() { return FdDomain(); }
  static FdDomain empty();
  static FdDomain singleton(const Integer& v) { return FdDomain(v, v); }

  bool isEmpty() const { return empty_; }
  bool isFinite() const { return !empty_ && lo_.isFinite() && hi_.isFinite(); }
  bool isSingleton() const { return !empty_ && lo_.isFinite() && lo_ == hi_; }
  const Bound& lo() const { return lo_; }
  const Bound& hi() const { return hi_; }
  const Integer& stride() const { return stride_; }
  const Integer& residue() const { return residue_; }

  bool contains(const Integer& v) const;
  /// Every member of this domain is in `other`.
  bool within(const FdDomain& other) const;

  FdDomain withLowerBound(const Bound& lo) const;
  FdDomain withUpperBound(const Bound& hi) const;
  /// Intersection with { x | x = r (mod m) }, m >= 1 (combined by CRT).
  FdDomain withCongruence(const Integer& m, const Integer& r) const;
  FdDomain intersect(const FdDomain& other) const;

  /// "lo..hi" with " mod m = r" when strided; "{}" when empty.
  std::string toString() const;

  friend bool operator==(const FdDomain& a, const FdDomain& b);

 private:
  void normalize();

  bool empty_ = false;
  Bound lo_;
  Bound hi_;
  Integer stride_ = 1;
  Integer residue_ = 0;
};

/// Number of members; nullopt when the domain is infinite.
std::optional<Integer> domainCount(const FdDomain& d);

/// Solution of a*x = b (mod m) as (modulus, residue), or nullopt when none
/// exists. m >= 1.
std::optional<std::pair<Integer, Integer>> solveLinearCongruence(const Integer& a, const Integer& b,
                                                                 const Integer& m);

}  // namespace loopcount
