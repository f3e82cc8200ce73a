#pragma once

#include <map>
#include <optional>
#include <string>

#include "loopcount/ast.hpp"
#include "loopcount/bound.hpp"

namespace loopcount {

/// Integer interval [lo, hi] over extended bounds, or the empty interval.
class Interval {
 public:
  /// Top: (-inf, +inf).
  Interval() : lo_(Bound::negInf()), hi_(Bound::posInf()) {}
  /// Empty when lo > hi.
  Interval(Bound lo, Bound hi);

  static Interval top() { return Interval(); }
  static Interval bottom();
  static Interval constant(const Integer& v) { return Interval(Bound(v), Bound(v)); }

  bool isBottom() const { return bottom_; }
  bool isTop() const { return !bottom_ && lo_.isNegInf() && hi_.isPosInf(); }
  bool isSingleton() const { return !bottom_ && lo_.isFinite() && lo_ == hi_; }
  const Bound& lo() const { return lo_; }
  const Bound& hi() const { return hi_; }

  bool contains(const Integer& v) const;
  /// this is a subset of other
  bool within(const Interval& other) const;
  bool containsZero() const { return contains(Integer(0)); }

  std::string toString() const;

  friend bool operator==(const Interval& a, const Interval& b);

 private:
  bool bottom_ = false;
  Bound lo_;
  Bound hi_;
};

/// Join: (min of lows, max of highs); bottom is the identity.
Interval combine(const Interval& a, const Interval& b);
Interval meet(const Interval& a, const Interval& b);
/// Each bound is kept when unchanged from `previous`, otherwise it jumps to infinity.
Interval widen(const Interval& previous, const Interval& next);

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator-(const Interval& a);
/// Min/max over all four corner products.
Interval operator*(const Interval& a, const Interval& b);
/// Truncating division; a divisor interval containing zero yields top.
Interval operator/(const Interval& a, const Interval& b);
/// C remainder (sign of the dividend); divisor containing zero yields top.
Interval operator%(const Interval& a, const Interval& b);

enum class AbstractBool { True, False, Unknown };

AbstractBool truthOf(const Interval& v);
/// True -> (1,1), False -> (0,0), Unknown -> top.
Interval toInterval(AbstractBool b);
AbstractBool compare(Relation rel, const Interval& a, const Interval& b);
AbstractBool logicalNot(AbstractBool b);
AbstractBool logicalAnd(AbstractBool a, AbstractBool b);
AbstractBool logicalOr(AbstractBool a, AbstractBool b);

/// Map from variable to interval, or the unreachable state. Variables
/// without an entry are top.
class AbstractState {
 public:
  /// Every variable top.
  AbstractState() = default;

  static AbstractState top() { return AbstractState(); }
  static AbstractState bottom();

  bool isBottom() const { return bottom_; }
  Interval get(const std::string& var) const;
  /// Binding a bottom interval turns the whole state into bottom.
  void set(const std::string& var, const Interval& value);
  void forget(const std::string& var) { env_.erase(var); }

  /// Non-top bindings (empty for bottom).
  const std::map<std::string, Interval>& bindings() const { return env_; }

  friend bool operator==(const AbstractState& a, const AbstractState& b);

 private:
  bool bottom_ = false;
  std::map<std::string, Interval> env_;
};

AbstractState combine(const AbstractState& a, const AbstractState& b);
AbstractState widen(const AbstractState& previous, const AbstractState& next);

/// Abstract evaluation of an expression over a non-bottom state. Comparisons
/// and logical operators yield their AbstractBool encoded as an interval.
Interval evalExpr(const Expr& e, const AbstractState& s);
AbstractBool evalCondition(const Expr& e, const AbstractState& s);

/// State on the true (`edge == true`) or false edge of a branch on `cond`:
/// bottom when the edge is statically excluded, otherwise refined for
/// comparisons between a variable and an expression.
AbstractState filter(const Expr& cond, const AbstractState& s, bool edge);

}  // namespace loopcount
