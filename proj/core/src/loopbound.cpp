#include "loopcount/loopbound.hpp"

#include <stdexcept>

#include "loopcount/json_util.hpp"

namespace loopcount {

BoundResult BoundResult::bound(Integer n) {
  BoundResult r;
  r.kind_ = Kind::Bound;
  r.n_ = std::move(n);
  return r;
}

BoundResult BoundResult::unbounded(std::string reason) {
  BoundResult r;
  r.kind_ = Kind::Unbounded;
  r.reason_ = std::move(reason);
  return r;
}

BoundResult BoundResult::notApplicable(std::string reason) {
  BoundResult r;
  r.kind_ = Kind::NotApplicable;
  r.reason_ = std::move(reason);
  return r;
}

const char* toString(BoundResult::Kind k) {
  switch (k) {
    case BoundResult::Kind::Bound: return "bound";
    case BoundResult::Kind::Unbounded: return "unbounded";
    case BoundResult::Kind::NotApplicable: return "not-applicable";
  }
  return "?";
}

nlohmann::json BoundResult::toJson() const {
  nlohmann::json j = {{"status", toString(kind_)}};
  j["n"] = isBound() ? integerToJson(n_) : nlohmann::json(nullptr);
  if (!reason_.empty()) j["reason"] = reason_;
  return j;
}

LoopParams deriveParams(Relation rel, const ExprPtr& a, const ExprPtr& b, const ExprPtr& c) {
  auto offset = [](const ExprPtr& e, int k) {
    return makeBinary(k < 0 ? BinaryOp::Sub : BinaryOp::Add, e, makeLit(k < 0 ? -k : k), e->span);
  };
  switch (rel) {
    case Relation::Lt: return {a, b, c, 0};
    case Relation::Le: return {a, offset(b, 1), c, 0};
    case Relation::Gt: return {b, a, c, 0};
    case Relation::Ge: return {b, offset(a, -1), c, 2};
    case Relation::Eq:
    case Relation::Ne: break;
  }
  throw std::invalid_argument("loop parameters need an ordering relation");
}

LoopParams deriveParams(const LoopDescriptor& d) {
  return deriveParams(d.normRel, d.initExpr, d.normBound, d.stepExpr);
}

ExprPtr boundExpression(const LoopParams& p, bool down) {
  ExprPtr span = makeBinary(BinaryOp::Sub, p.highExpr, p.lowExpr);
  if (p.correction != 0) span = makeBinary(BinaryOp::Add, span, makeLit(p.correction));
  ExprPtr step = down ? makeUnary(UnaryOp::Neg, p.stepExpr) : p.stepExpr;
  return makeBinary(BinaryOp::Div, span, step);
}

namespace {

BoundResult infinite(const Expr& e, const AbstractState& state) {
  for (const auto& v : variablesIn(e)) {
    if (state.get(v).isTop()) return BoundResult::notApplicable("interval of " + v + " is unknown");
  }
  return BoundResult::unbounded("iteration range is not bounded above");
}

}  // namespace

BoundResult evaluateBound(const LoopParams& params, bool down, const AbstractState& state,
                          const InvarianceTest& isInvariant) {
  if (state.isBottom()) return BoundResult::bound(0);
  ExprPtr e = simplify(boundExpression(params, down), isInvariant);
  if (const auto* div = e->as<Binary>(); div && div->op == BinaryOp::Div) {
    Interval num = evalExpr(*div->lhs, state);
    Interval den = evalExpr(*div->rhs, state);
    if (num.isBottom() || den.isBottom()) return BoundResult::bound(0);
    if (!(den.lo() > Bound(0))) {
      return BoundResult::notApplicable("step magnitude " + den.toString() + " may be zero");
    }
    if (!num.hi().isFinite()) return infinite(*div->lhs, state);
    if (num.hi() <= Bound(0)) return BoundResult::bound(0);
    if (!den.lo().isFinite()) return BoundResult::bound(1);
    return BoundResult::bound(ceilDiv(num.hi().value(), den.lo().value()));
  }
  Interval v = evalExpr(*e, state);
  if (v.isBottom()) return BoundResult::bound(0);
  if (!v.hi().isFinite()) return infinite(*e, state);
  return BoundResult::bound(v.hi() <= Bound(0) ? Integer(0) : v.hi().value());
}

namespace {

BoundResult boundFor(const LoopDescriptor& d, const ProgramIndex& index, const IntervalResult& itv) {
  const Stmt& loop = *index.stmt(d.loopLabel);
  auto invariant = [&](const Expr& e) {
    return isLoopInvariant(classify(e, loop, index, itv));
  };
  LoopParams params = deriveParams(d);
  // A step that changes between iterations contributes its smallest magnitude.
  if (d.stepClass == ValueClass::Variable || !d.stepRange.isSingleton()) {
    const Bound& nearest = d.direction == Direction::Up ? d.stepRange.lo() : d.stepRange.hi();
    if (!nearest.isFinite()) return BoundResult::notApplicable("step interval is unbounded");
    params.stepExpr = makeLit(nearest.value());
  }
  return evaluateBound(params, d.direction == Direction::Down, itv.before(d.condLabel), invariant);
}

}  // namespace

BoundResult loopBound(const LoopDescriptor& d, const ProgramIndex& index, const IntervalResult& itv) {
  BoundResult best = boundFor(d, index, itv);
  for (const auto& alt : d.alternatives) {
    BoundResult r = boundFor(alt, index, itv);
    if (!r.isBound()) continue;
    if (!best.isBound() || r.n() < best.n()) best = r;
  }
  return best;
}

}  // namespace loopcount
