#include "loopcount/interval.hpp"

#include <array>

namespace loopcount {

Interval::Interval(Bound lo, Bound hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (hi_ < lo_ || lo_.isPosInf() || hi_.isNegInf()) *this = bottom();
}

Interval Interval::bottom() {
  Interval i;
  i.bottom_ = true;
  i.lo_ = Bound::posInf();
  i.hi_ = Bound::negInf();
  return i;
}

bool Interval::contains(const Integer& v) const {
  return !bottom_ && lo_ <= Bound(v) && Bound(v) <= hi_;
}

bool Interval::within(const Interval& other) const {
  if (bottom_) return true;
  if (other.bottom_) return false;
  return other.lo_ <= lo_ && hi_ <= other.hi_;
}

std::string Interval::toString() const {
  if (bottom_) return "bottom";
  return "[" + lo_.toString() + ", " + hi_.toString() + "]";
}

bool operator==(const Interval& a, const Interval& b) {
  if (a.bottom_ || b.bottom_) return a.bottom_ == b.bottom_;
  return a.lo_ == b.lo_ && a.hi_ == b.hi_;
}

Interval combine(const Interval& a, const Interval& b) {
  if (a.isBottom()) return b;
  if (b.isBottom()) return a;
  return Interval(min(a.lo(), b.lo()), max(a.hi(), b.hi()));
}

Interval meet(const Interval& a, const Interval& b) {
  if (a.isBottom() || b.isBottom()) return Interval::bottom();
  return Interval(max(a.lo(), b.lo()), min(a.hi(), b.hi()));
}

Interval widen(const Interval& previous, const Interval& next) {
  if (previous.isBottom()) return next;
  if (next.isBottom()) return previous;
  Bound lo = previous.lo() == next.lo() ? previous.lo() : Bound::negInf();
  Bound hi = previous.hi() == next.hi() ? previous.hi() : Bound::posInf();
  return Interval(lo, hi);
}

Interval operator+(const Interval& a, const Interval& b) {
  if (a.isBottom() || b.isBottom()) return Interval::bottom();
  return Interval(a.lo() + b.lo(), a.hi() + b.hi());
}

Interval operator-(const Interval& a, const Interval& b) {
  if (a.isBottom() || b.isBottom()) return Interval::bottom();
  return Interval(a.lo() - b.hi(), a.hi() - b.lo());
}

Interval operator-(const Interval& a) {
  if (a.isBottom()) return a;
  return Interval(-a.hi(), -a.lo());
}

namespace {

Interval hull(const std::array<Bound, 4>& corners) {
  Bound lo = corners[0];
  Bound hi = corners[0];
  for (const auto& c : corners) {
    lo = min(lo, c);
    hi = max(hi, c);
  }
  return Interval(lo, hi);
}

// Truncating quotient of extended integers with a non-zero divisor.
// inf/inf never bounds the hull (a neighbouring corner dominates), so 0.
Bound divide(const Bound& x, const Bound& y) {
  if (!y.isFinite()) {
    return Bound(0);
  }
  if (!x.isFinite()) {
    return (x.sign() * y.sign()) > 0 ? Bound::posInf() : Bound::negInf();
  }
  return Bound(truncDiv(x.value(), y.value()));
}

}  // namespace

Interval operator*(const Interval& a, const Interval& b) {
  if (a.isBottom() || b.isBottom()) return Interval::bottom();
  return hull({a.lo() * b.lo(), a.lo() * b.hi(), a.hi() * b.lo(), a.hi() * b.hi()});
}

Interval operator/(const Interval& a, const Interval& b) {
  if (a.isBottom() || b.isBottom()) return Interval::bottom();
  if (b.containsZero()) return Interval::top();
  return hull({divide(a.lo(), b.lo()), divide(a.lo(), b.hi()), divide(a.hi(), b.lo()),
               divide(a.hi(), b.hi())});
}

Interval operator%(const Interval& a, const Interval& b) {
  if (a.isBottom() || b.isBottom()) return Interval::bottom();
  if (b.containsZero()) return Interval::top();
  if (a.isSingleton() && b.isSingleton()) {
    return Interval::constant(truncMod(a.lo().value(), b.lo().value()));
  }
  // |a % b| <= max|b| - 1, and the result has the sign of a.
  Bound magnitude = max(-b.lo(), b.hi()) - Bound(1);
  Bound lo = a.lo().sign() >= 0 ? Bound(0) : max(a.lo(), -magnitude);
  Bound hi = a.hi().sign() <= 0 ? Bound(0) : min(a.hi(), magnitude);
  return Interval(lo, hi);
}

AbstractBool truthOf(const Interval& v) {
  if (v.isBottom()) return AbstractBool::Unknown;
  if (v.isSingleton() && v.lo().value() == 0) return AbstractBool::False;
  if (!v.containsZero()) return AbstractBool::True;
  return AbstractBool::Unknown;
}

Interval toInterval(AbstractBool b) {
  switch (b) {
    case AbstractBool::True: return Interval::constant(1);
    case AbstractBool::False: return Interval::constant(0);
    case AbstractBool::Unknown: return Interval::top();
  }
  return Interval::top();
}

AbstractBool compare(Relation rel, const Interval& a, const Interval& b) {
  if (a.isBottom() || b.isBottom()) return AbstractBool::Unknown;
  auto verdict = [](bool isTrue, bool isFalse) {
    return isTrue ? AbstractBool::True : (isFalse ? AbstractBool::False : AbstractBool::Unknown);
  };
  switch (rel) {
    case Relation::Lt: return verdict(a.hi() < b.lo(), a.lo() >= b.hi());
    case Relation::Le: return verdict(a.hi() <= b.lo(), a.lo() > b.hi());
    case Relation::Gt: return verdict(a.lo() > b.hi(), a.hi() <= b.lo());
    case Relation::Ge: return verdict(a.lo() >= b.hi(), a.hi() < b.lo());
    case Relation::Eq:
      if (a.isSingleton() && b.isSingleton()) {
        return a.lo() == b.lo() ? AbstractBool::True : AbstractBool::False;
      }
      return verdict(false, a.hi() < b.lo() || a.lo() > b.hi());
    case Relation::Ne:
      if (a.isSingleton() && b.isSingleton()) {
        return a.lo() != b.lo() ? AbstractBool::True : AbstractBool::False;
      }
      return verdict(a.hi() < b.lo() || a.lo() > b.hi(), false);
  }
  return AbstractBool::Unknown;
}

AbstractBool logicalNot(AbstractBool b) {
  if (b == AbstractBool::True) return AbstractBool::False;
  if (b == AbstractBool::False) return AbstractBool::True;
  return AbstractBool::Unknown;
}

AbstractBool logicalAnd(AbstractBool a, AbstractBool b) {
  if (a == AbstractBool::False || b == AbstractBool::False) return AbstractBool::False;
  if (a == AbstractBool::True && b == AbstractBool::True) return AbstractBool::True;
  return AbstractBool::Unknown;
}

AbstractBool logicalOr(AbstractBool a, AbstractBool b) {
  if (a == AbstractBool::True || b == AbstractBool::True) return AbstractBool::True;
  if (a == AbstractBool::False && b == AbstractBool::False) return AbstractBool::False;
  return AbstractBool::Unknown;
}

// ---- AbstractState ----------------------------------------------------------

AbstractState AbstractState::bottom() {
  AbstractState s;
  s.bottom_ = true;
  return s;
}

Interval AbstractState::get(const std::string& var) const {
  if (bottom_) return Interval::bottom();
  auto it = env_.find(var);
  return it == env_.end() ? Interval::top() : it->second;
}

void AbstractState::set(const std::string& var, const Interval& value) {
  if (bottom_) return;
  if (value.isBottom()) {
    *this = bottom();
  } else if (value.isTop()) {
    env_.erase(var);
  } else {
    env_[var] = value;
  }
}

bool operator==(const AbstractState& a, const AbstractState& b) {
  return a.bottom_ == b.bottom_ && a.env_ == b.env_;
}

AbstractState combine(const AbstractState& a, const AbstractState& b) {
  if (a.isBottom()) return b;
  if (b.isBottom()) return a;
  AbstractState out;
  for (const auto& [var, itv] : a.bindings()) {
    auto it = b.bindings().find(var);
    if (it != b.bindings().end()) out.set(var, combine(itv, it->second));
  }
  return out;
}

AbstractState widen(const AbstractState& previous, const AbstractState& next) {
  if (previous.isBottom()) return next;
  if (next.isBottom()) return previous;
  AbstractState out;
  for (const auto& [var, itv] : previous.bindings()) {
    auto it = next.bindings().find(var);
    if (it != next.bindings().end()) out.set(var, widen(itv, it->second));
  }
  return out;
}

// ---- evaluation ---------------------------------------------------------------

Interval evalExpr(const Expr& e, const AbstractState& s) {
  if (s.isBottom()) return Interval::bottom();
  if (const auto* lit = e.as<IntLit>()) return Interval::constant(lit->value);
  if (const auto* v = e.as<VarRef>()) return s.get(v->name);
  if (e.is<ArrayRead>()) return Interval::top();
  if (const auto* u = e.as<Unary>()) {
    switch (u->op) {
      case UnaryOp::Neg: return -evalExpr(*u->operand, s);
      case UnaryOp::Not: return toInterval(logicalNot(truthOf(evalExpr(*u->operand, s))));
      case UnaryOp::AddrOf: return Interval::top();
    }
  }
  const auto& b = *e.as<Binary>();
  if (b.op == BinaryOp::And || b.op == BinaryOp::Or) {
    AbstractBool l = truthOf(evalExpr(*b.lhs, s));
    AbstractBool r = truthOf(evalExpr(*b.rhs, s));
    return toInterval(b.op == BinaryOp::And ? logicalAnd(l, r) : logicalOr(l, r));
  }
  Interval l = evalExpr(*b.lhs, s);
  Interval r = evalExpr(*b.rhs, s);
  if (isComparison(b.op)) return toInterval(compare(toRelation(b.op), l, r));
  switch (b.op) {
    case BinaryOp::Add: return l + r;
    case BinaryOp::Sub: return l - r;
    case BinaryOp::Mul: return l * r;
    case BinaryOp::Div: return l / r;
    case BinaryOp::Mod: return l % r;
    default: return Interval::top();
  }
}

AbstractBool evalCondition(const Expr& e, const AbstractState& s) {
  return truthOf(evalExpr(e, s));
}

namespace {

// Narrow `var` so that `var rel bound` can hold.
void refineVariable(AbstractState& s, const std::string& var, Relation rel, const Interval& bound) {
  Interval current = s.get(var);
  Interval allowed = Interval::top();
  switch (rel) {
    case Relation::Lt: allowed = Interval(Bound::negInf(), bound.hi() - Bound(1)); break;
    case Relation::Le: allowed = Interval(Bound::negInf(), bound.hi()); break;
    case Relation::Gt: allowed = Interval(bound.lo() + Bound(1), Bound::posInf()); break;
    case Relation::Ge: allowed = Interval(bound.lo(), Bound::posInf()); break;
    case Relation::Eq: allowed = bound; break;
    case Relation::Ne:
      if (bound.isSingleton() && !current.isBottom()) {
        if (current.lo() == bound.lo()) current = Interval(current.lo() + Bound(1), current.hi());
        if (!current.isBottom() && current.hi() == bound.lo()) {
          current = Interval(current.lo(), current.hi() - Bound(1));
        }
      }
      break;
  }
  s.set(var, meet(current, allowed));
}

}  // namespace

AbstractState filter(const Expr& cond, const AbstractState& s, bool edge) {
  if (s.isBottom()) return s;
  AbstractBool v = evalCondition(cond, s);
  if ((v == AbstractBool::True && !edge) || (v == AbstractBool::False && edge)) {
    return AbstractState::bottom();
  }
  if (const auto* u = cond.as<Unary>(); u && u->op == UnaryOp::Not) {
    return filter(*u->operand, s, !edge);
  }
  AbstractState out = s;
  if (const auto* var = cond.as<VarRef>()) {
    refineVariable(out, var->name, edge ? Relation::Ne : Relation::Eq, Interval::constant(0));
    return out;
  }
  const auto* b = cond.as<Binary>();
  if (!b || !isComparison(b->op)) return out;
  Relation rel = toRelation(b->op);
  if (!edge) rel = negate(rel);
  Interval lhs = evalExpr(*b->lhs, s);
  Interval rhs = evalExpr(*b->rhs, s);
  if (const auto* lv = b->lhs->as<VarRef>()) refineVariable(out, lv->name, rel, rhs);
  if (const auto* rv = b->rhs->as<VarRef>()) refineVariable(out, rv->name, mirror(rel), lhs);
  return out;
}

}  // namespace loopcount
