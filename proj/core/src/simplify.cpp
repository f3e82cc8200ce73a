#include "loopcount/simplify.hpp"

#include <optional>
#include <vector>

namespace loopcount {

namespace {

struct Term {
  Integer coef;
  ExprPtr expr;
};

/// Sum of coefficient * term plus a constant.
struct Linear {
  std::vector<Term> terms;
  Integer constant = 0;
};

std::optional<Integer> literal(const ExprPtr& e) {
  if (const auto* l = e->as<IntLit>()) return l->value;
  return std::nullopt;
}

class Simplifier {
 public:
  explicit Simplifier(const InvarianceTest& isInvariant) : isInvariant_(isInvariant) {}

  ExprPtr run(const ExprPtr& e) {
    if (e->is<IntLit>() || e->is<VarRef>()) return e;
    if (const auto* r = e->as<ArrayRead>()) {
      return makeArrayRead(r->array, run(r->index), e->span);
    }
    if (const auto* u = e->as<Unary>()) {
      if (u->op == UnaryOp::Neg) return rebuild(linear(e));
      ExprPtr x = run(u->operand);
      if (u->op == UnaryOp::Not) {
        if (auto v = literal(x)) return makeLit(*v == 0 ? 1 : 0, e->span);
      }
      return makeUnary(u->op, x, e->span);
    }
    const auto& b = *e->as<Binary>();
    switch (b.op) {
      case BinaryOp::Add:
      case BinaryOp::Sub: return rebuild(linear(e));
      case BinaryOp::Mul: return mul(e, b);
      case BinaryOp::Div: return div(e, b);
      case BinaryOp::Mod: {
        ExprPtr l = run(b.lhs), r = run(b.rhs);
        auto lv = literal(l), rv = literal(r);
        if (lv && rv && *rv != 0) return makeLit(truncMod(*lv, *rv), e->span);
        return makeBinary(b.op, l, r, e->span);
      }
      default: {
        ExprPtr l = run(b.lhs), r = run(b.rhs);
        auto lv = literal(l), rv = literal(r);
        if (lv && rv) {
          bool t = false;
          switch (b.op) {
            case BinaryOp::Lt: t = *lv < *rv; break;
            case BinaryOp::Le: t = *lv <= *rv; break;
            case BinaryOp::Gt: t = *lv > *rv; break;
            case BinaryOp::Ge: t = *lv >= *rv; break;
            case BinaryOp::Eq: t = *lv == *rv; break;
            case BinaryOp::Ne: t = *lv != *rv; break;
            case BinaryOp::And: t = *lv != 0 && *rv != 0; break;
            case BinaryOp::Or: t = *lv != 0 || *rv != 0; break;
            default: break;
          }
          return makeLit(t ? 1 : 0, e->span);
        }
        return makeBinary(b.op, l, r, e->span);
      }
    }
  }

 private:
  ExprPtr mul(const ExprPtr& e, const Binary& b) {
    ExprPtr l = run(b.lhs), r = run(b.rhs);
    auto lv = literal(l), rv = literal(r);
    if ((lv && *lv == 0) || (rv && *rv == 0)) return makeLit(0, e->span);
    if (lv || rv) return rebuild(linear(e));
    return makeBinary(BinaryOp::Mul, l, r, e->span);
  }

  ExprPtr div(const ExprPtr& e, const Binary& b) {
    ExprPtr l = run(b.lhs), r = run(b.rhs);
    auto rv = literal(r);
    if (rv && *rv != 0) {
      if (*rv == 1) return l;
      // Exact division of every coefficient keeps C's truncating semantics.
      Linear lin = linear(l);
      bool exact = truncMod(lin.constant, *rv) == 0;
      for (const auto& t : lin.terms) exact = exact && truncMod(t.coef, *rv) == 0;
      if (exact) {
        lin.constant /= *rv;
        for (auto& t : lin.terms) t.coef /= *rv;
        return rebuild(lin);
      }
    }
    return makeBinary(BinaryOp::Div, l, r, e->span);
  }

  Linear linear(const ExprPtr& e) {
    Linear out;
    collect(e, 1, out);
    merge(out);
    return out;
  }

  void collect(const ExprPtr& e, const Integer& factor, Linear& out) {
    if (factor == 0) return;
    if (const auto* l = e->as<IntLit>()) {
      out.constant += factor * l->value;
      return;
    }
    if (const auto* u = e->as<Unary>(); u && u->op == UnaryOp::Neg) {
      collect(u->operand, -factor, out);
      return;
    }
    if (const auto* b = e->as<Binary>()) {
      if (b->op == BinaryOp::Add || b->op == BinaryOp::Sub) {
        collect(b->lhs, factor, out);
        collect(b->rhs, b->op == BinaryOp::Add ? factor : Integer(-factor), out);
        return;
      }
      if (b->op == BinaryOp::Mul) {
        ExprPtr l = run(b->lhs), r = run(b->rhs);
        if (auto lv = literal(l)) return collect(r, factor * *lv, out);
        if (auto rv = literal(r)) return collect(l, factor * *rv, out);
        out.terms.push_back({factor, makeBinary(BinaryOp::Mul, l, r, e->span)});
        return;
      }
    }
    ExprPtr s = run(e);
    if (s->is<IntLit>() || s->is<Unary>() ||
        (s->is<Binary>() && (s->as<Binary>()->op == BinaryOp::Add ||
                             s->as<Binary>()->op == BinaryOp::Sub))) {
      if (!equalModuloSpans(*s, *e)) return collect(s, factor, out);
    }
    out.terms.push_back({factor, s});
  }

  void merge(Linear& lin) {
    std::vector<Term> merged;
    for (auto& t : lin.terms) {
      bool done = false;
      if (isInvariant_(*t.expr)) {
        for (auto& m : merged) {
          if (equalModuloSpans(*m.expr, *t.expr)) {
            m.coef += t.coef;
            done = true;
            break;
          }
        }
      }
      if (!done) merged.push_back(t);
    }
    lin.terms.clear();
    for (auto& m : merged) {
      if (m.coef != 0) lin.terms.push_back(std::move(m));
    }
  }

  static ExprPtr scaled(const Integer& k, const ExprPtr& e) {
    if (k == 1) return e;
    return makeBinary(BinaryOp::Mul, makeLit(k, e->span), e, e->span);
  }

  static ExprPtr rebuild(const Linear& lin) {
    ExprPtr acc;
    for (const auto& t : lin.terms) {
      if (!acc) {
        acc = t.coef < 0 ? makeUnary(UnaryOp::Neg, scaled(-t.coef, t.expr), t.expr->span)
                         : scaled(t.coef, t.expr);
      } else if (t.coef < 0) {
        acc = makeBinary(BinaryOp::Sub, acc, scaled(-t.coef, t.expr), acc->span);
      } else {
        acc = makeBinary(BinaryOp::Add, acc, scaled(t.coef, t.expr), acc->span);
      }
    }
    if (!acc) return makeLit(lin.constant);
    if (lin.constant > 0) return makeBinary(BinaryOp::Add, acc, makeLit(lin.constant), acc->span);
    if (lin.constant < 0) {
      return makeBinary(BinaryOp::Sub, acc, makeLit(-lin.constant), acc->span);
    }
    return acc;
  }

  const InvarianceTest& isInvariant_;
};

}  // namespace

ExprPtr simplify(const ExprPtr& e, const InvarianceTest& isInvariant) {
  Simplifier s(isInvariant);
  ExprPtr cur = e;
  for (int round = 0; round < 16; ++round) {
    ExprPtr next = s.run(cur);
    if (equalModuloSpans(*next, *cur)) return next;
    cur = next;
  }
  return cur;
}

}  // namespace loopcount
