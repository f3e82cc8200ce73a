#include "loopcount/looprec.hpp"

#include <functional>
#include <set>

#include "loopcount/json_util.hpp"
#include "loopcount/simplify.hpp"
#include "loopcount/unparse.hpp"

namespace loopcount {

const char* toString(ValueClass c) {
  switch (c) {
    case ValueClass::Constant: return "constant";
    case ValueClass::LoopInvariant: return "loop-invariant";
    case ValueClass::Variable: return "variable";
  }
  return "?";
}

bool isLoopInvariant(ValueClass c) { return c != ValueClass::Variable; }

const char* toString(Direction d) { return d == Direction::Up ? "up" : "down"; }

const char* toString(RejectReason r) {
  switch (r) {
    case RejectReason::NotIterationVariableBased: return "not-iteration-variable-based";
    case RejectReason::C1: return "C1";
    case RejectReason::C2: return "C2";
    case RejectReason::C3: return "C3";
    case RejectReason::C4: return "C4";
  }
  return "?";
}

namespace {

struct Candidate {
  std::string var;
  Relation rel;
  ExprPtr bound;
};

void conjuncts(const ExprPtr& e, std::vector<ExprPtr>& out) {
  if (const auto* b = e->as<Binary>(); b && b->op == BinaryOp::And) {
    conjuncts(b->lhs, out);
    conjuncts(b->rhs, out);
  } else {
    out.push_back(e);
  }
}

std::vector<Candidate> exitCandidates(const ExprPtr& cond) {
  std::vector<ExprPtr> parts;
  conjuncts(cond, parts);
  std::vector<Candidate> out;
  for (const auto& p : parts) {
    const auto* b = p->as<Binary>();
    if (!b || !isComparison(b->op)) continue;
    Relation rel = toRelation(b->op);
    if (const auto* v = b->lhs->as<VarRef>()) out.push_back({v->name, rel, b->rhs});
    if (const auto* v = b->rhs->as<VarRef>()) out.push_back({v->name, mirror(rel), b->lhs});
  }
  return out;
}

bool mentions(const Expr& e, const std::string& var) { return variablesIn(e).count(var) > 0; }

/// Increment c of a statement `v = v + c`, `v = c + v` or `v = v - e`.
ExprPtr stepIncrement(const Stmt& s, const std::string& v) {
  const auto* a = s.as<Assign>();
  if (!a || a->target != v) return nullptr;
  const auto* b = a->value->as<Binary>();
  if (!b) return nullptr;
  auto isV = [&](const ExprPtr& e) {
    const auto* r = e->as<VarRef>();
    return r && r->name == v;
  };
  ExprPtr c;
  if (b->op == BinaryOp::Add && isV(b->lhs)) {
    c = b->rhs;
  } else if (b->op == BinaryOp::Add && isV(b->rhs)) {
    c = b->lhs;
  } else if (b->op == BinaryOp::Sub && isV(b->lhs)) {
    if (const auto* lit = b->rhs->as<IntLit>()) {
      c = makeLit(-lit->value, b->rhs->span);
    } else {
      c = makeUnary(UnaryOp::Neg, b->rhs, b->rhs->span);
    }
  }
  if (!c || mentions(*c, v)) return nullptr;
  return c;
}

std::vector<const Stmt*> topLevel(const Stmt& body) {
  std::vector<const Stmt*> out;
  if (const auto* b = body.as<Block>()) {
    for (const auto& s : b->stmts) out.push_back(s.get());
  } else {
    out.push_back(&body);
  }
  return out;
}

bool isCompound(const Stmt& s) { return s.is<Block>() || s.is<If>() || s.is<Loop>(); }

/// Statements executed as part of an iteration: body and for-step.
void forEachIterationStmt(const Loop& l, const std::function<void(const Stmt&)>& visit) {
  forEachStmt(*l.body, visit);
  if (l.step) forEachStmt(*l.step, visit);
}

std::set<std::string> writtenInIteration(const Loop& l, const ProgramIndex& index) {
  std::set<std::string> out = writtenVariables(*l.body, index);
  if (l.step) {
    auto s = writtenVariables(*l.step, index);
    out.insert(s.begin(), s.end());
  }
  return out;
}

Rejection reject(const Stmt& loop, RejectReason reason, std::string detail) {
  return Rejection{loop.label, reason, std::move(detail), loop.span};
}

std::string at(const Stmt& s) { return " (line " + std::to_string(s.span.line) + ")"; }

struct Init {
  const Stmt* stmt = nullptr;
  ExprPtr value;
};

ExprPtr initValue(const Stmt& s, const std::string& v) {
  if (const auto* a = s.as<Assign>(); a && a->target == v) return a->value;
  if (const auto* d = s.as<Decl>(); d && d->name == v && !d->arraySize && !d->pointer) {
    return d->init;
  }
  return nullptr;
}

/// l1 for `v`: the for-init when it sets v, otherwise the nearest preceding
/// statement of the enclosing block that writes v, provided it is a plain
/// assignment whose operands are not written again before the loop.
std::variant<Init, std::string> findInit(const Stmt& loopStmt, const Loop& l, const std::string& v,
                                         const ProgramIndex& index) {
  if (l.init) {
    if (ExprPtr a = initValue(*l.init, v)) return Init{l.init.get(), a};
    if (writtenVariables(*l.init, index).count(v)) {
      return "for-init writes " + v + " in an unsupported form";
    }
  }
  const StmtSite& site = index.site(loopStmt.label);
  const auto* block = site.parent ? site.parent->as<Block>() : nullptr;
  if (!block) return "no initialization of " + v + " before the loop";
  std::set<std::string> laterWrites;
  if (l.init) laterWrites = writtenVariables(*l.init, index);
  for (std::size_t k = site.indexInBlock; k-- > 0;) {
    const Stmt& s = *block->stmts[k];
    auto written = writtenVariables(s, index);
    if (written.count(v)) {
      ExprPtr a = initValue(s, v);
      if (!a) return "last write to " + v + " before the loop is not a plain assignment" + at(s);
      for (const auto& x : variablesIn(*a)) {
        if (laterWrites.count(x)) {
          return "operand " + x + " of the initialization is modified before the loop";
        }
      }
      return Init{&s, a};
    }
    laterWrites.insert(written.begin(), written.end());
  }
  return "no initialization of " + v + " before the loop";
}

std::variant<LoopDescriptor, std::string> extractShape(const Stmt& loopStmt, const Candidate& cand,
                                                       const ProgramIndex& index) {
  const Loop& l = *loopStmt.as<Loop>();
  const std::string& v = cand.var;
  bool declaredInside = false;
  forEachIterationStmt(l, [&](const Stmt& s) {
    if (const auto* d = s.as<Decl>(); d && d->name == v) declaredInside = true;
  });
  if (declaredInside) return v + " is declared inside the loop";
  if (mentions(*cand.bound, v)) return "exit bound mentions " + v;

  const Stmt* step = nullptr;
  ExprPtr c;
  if (l.step) {
    if ((c = stepIncrement(*l.step, v))) step = l.step.get();
  }
  if (!step) {
    auto body = topLevel(*l.body);
    for (auto it = body.rbegin(); it != body.rend(); ++it) {
      if ((c = stepIncrement(**it, v))) {
        step = *it;
        break;
      }
    }
  }
  if (!step) return "no monotone step statement for " + v;

  auto init = findInit(loopStmt, l, v, index);
  if (auto* why = std::get_if<std::string>(&init)) return *why;
  const Init& in = std::get<Init>(init);
  if (mentions(*in.value, v)) return "initialization of " + v + " refers to itself";

  LoopDescriptor d;
  d.loopLabel = loopStmt.label;
  d.iterVar = v;
  d.initLabel = in.stmt->label;
  d.initExpr = in.value;
  d.initInHeader = in.stmt == l.init.get();
  d.condLabel = l.condLabel;
  d.rel = cand.rel;
  d.boundExpr = cand.bound;
  d.stepLabel = step->label;
  d.stepExpr = c;
  d.stepInHeader = step == l.step.get();
  return d;
}

int rejectionRank(const Rejection& r) { return static_cast<int>(r.reason); }

}  // namespace

const AbstractState& loopEntryState(const Stmt& loop, const IntervalResult& itv) {
  const Loop& l = *loop.as<Loop>();
  return l.init ? itv.after(l.init->label) : itv.before(loop.label);
}

ValueClass classify(const Expr& e, const Stmt& loop, const ProgramIndex& index,
                    const IntervalResult& itv) {
  const Loop& l = *loop.as<Loop>();
  bool hasArray = false;
  forEachSubExpr(e, [&](const Expr& sub) { hasArray = hasArray || sub.is<ArrayRead>(); });
  if (hasArray) return ValueClass::Variable;
  auto written = writtenInIteration(l, index);
  auto vars = variablesIn(e);
  for (const auto& x : vars) {
    if (written.count(x)) return ValueClass::Variable;
  }
  const AbstractState& entry = loopEntryState(loop, itv);
  if (entry.isBottom()) {
    return vars.empty() && evalExpr(e, AbstractState::top()).isSingleton()
               ? ValueClass::Constant
               : ValueClass::LoopInvariant;
  }
  for (const auto& x : vars) {
    if (!entry.get(x).isSingleton()) return ValueClass::LoopInvariant;
  }
  return evalExpr(e, entry).isSingleton() ? ValueClass::Constant : ValueClass::LoopInvariant;
}

std::variant<LoopDescriptor, Rejection> normalizeRel(const LoopDescriptor& d) {
  LoopDescriptor out = d;
  const bool up = d.direction == Direction::Up;
  auto plus = [&](Integer k) {
    return simplify(makeBinary(k < 0 ? BinaryOp::Sub : BinaryOp::Add, d.boundExpr, makeLit(abs(k)),
                               d.boundExpr->span),
                    [](const Expr&) { return false; });
  };
  auto fail = [&](std::string why) {
    return Rejection{d.loopLabel, RejectReason::C4, std::move(why), d.boundExpr->span};
  };
  switch (d.rel) {
    case Relation::Lt:
      out.normRel = Relation::Le;
      out.normBound = plus(-1);
      return out;
    case Relation::Gt:
      out.normRel = Relation::Ge;
      out.normBound = plus(1);
      return out;
    case Relation::Le:
    case Relation::Ge:
      out.normRel = d.rel;
      out.normBound = d.boundExpr;
      return out;
    case Relation::Eq:
    case Relation::Ne: break;
  }
  const char* op = spelling(d.rel);
  if (d.initClass != ValueClass::Constant || d.boundClass != ValueClass::Constant ||
      d.stepClass != ValueClass::Constant || !d.initRange.isSingleton() ||
      !d.boundRange.isSingleton() || !d.stepRange.isSingleton()) {
    return fail(std::string("exit relation ") + op + " needs constant init, bound and step");
  }
  const Integer& a = d.initRange.lo().value();
  const Integer& b = d.boundRange.lo().value();
  const Integer& c = d.stepRange.lo().value();
  if (truncMod(b - a, c) != 0) {
    return fail(std::string("exit relation ") + op + ": bound - init is not a multiple of the step");
  }
  if (d.rel == Relation::Ne) {
    out.normRel = up ? Relation::Le : Relation::Ge;
    out.normBound = plus(up ? -1 : 1);
  } else {
    out.normRel = up ? Relation::Le : Relation::Ge;
    out.normBound = d.boundExpr;
  }
  return out;
}

std::variant<LoopDescriptor, Rejection> checkSafety(const LoopDescriptor& d,
                                                    const ProgramIndex& index,
                                                    const IntervalResult& itv) {
  const Stmt& loopStmt = *index.stmt(d.loopLabel);
  const Loop& l = *loopStmt.as<Loop>();
  const std::string& v = d.iterVar;

  // C1
  std::optional<Rejection> c1;
  forEachIterationStmt(l, [&](const Stmt& s) {
    if (c1 || isCompound(s) || s.label == d.stepLabel) return;
    if (writtenVariables(s, index).count(v)) {
      c1 = reject(loopStmt, RejectReason::C1, v + " is written inside the loop" + at(s));
    }
  });
  if (c1) return *c1;

  // C2
  bool addressTaken = false;
  if (index.isGlobal(v)) {
    for (const auto& f : index.program().functions) addressTaken |= takesAddressOf(*f.body, v);
    for (const auto& g : index.program().globals) addressTaken |= takesAddressOf(*g, v);
  } else {
    addressTaken = takesAddressOf(*index.site(loopStmt.label).function->body, v);
  }
  if (addressTaken) return reject(loopStmt, RejectReason::C2, "address of " + v + " is taken");

  // C3
  LoopDescriptor out = d;
  out.initRange = itv.after(d.initLabel).get(v);
  const AbstractState& head = itv.before(d.condLabel);
  if (head.isBottom() || itv.after(d.initLabel).isBottom()) {
    return reject(loopStmt, RejectReason::C3, "loop is unreachable");
  }
  // A loop that never iterates has no state at its step; the head state
  // still fixes the step's sign.
  const AbstractState& beforeStep =
      itv.before(d.stepLabel).isBottom() ? head : itv.before(d.stepLabel);
  out.boundRange = evalExpr(*d.boundExpr, head);
  out.stepRange = evalExpr(*d.stepExpr, beforeStep);
  const Interval& c = out.stepRange;
  if (c.lo() > Bound(0)) {
    out.direction = Direction::Up;
  } else if (c.hi() < Bound(0)) {
    out.direction = Direction::Down;
  } else {
    return reject(loopStmt, RejectReason::C3, "step " + c.toString() + " has no unique sign");
  }
  Interval overlap = meet(out.initRange, out.boundRange);
  if (!overlap.isBottom() && !overlap.isSingleton()) {
    return reject(loopStmt, RejectReason::C3,
                  "init " + out.initRange.toString() + " and bound " + out.boundRange.toString() +
                      " overlap in more than one value");
  }
  Interval distance = out.boundRange - out.initRange;
  const bool up = out.direction == Direction::Up;
  if (up ? distance.lo() < Bound(0) : distance.hi() > Bound(0)) {
    return reject(loopStmt, RejectReason::C3,
                  "bound - init " + distance.toString() + " contradicts the step direction");
  }
  bool relFits = d.rel == Relation::Eq || d.rel == Relation::Ne ||
                 (up ? (d.rel == Relation::Lt || d.rel == Relation::Le)
                     : (d.rel == Relation::Gt || d.rel == Relation::Ge));
  if (!relFits) {
    return reject(loopStmt, RejectReason::C3,
                  std::string("exit relation ") + spelling(d.rel) + " contradicts the step direction");
  }

  out.initClass = classify(*d.initExpr, loopStmt, index, itv);
  out.boundClass = classify(*d.boundExpr, loopStmt, index, itv);
  out.stepClass = classify(*d.stepExpr, loopStmt, index, itv);

  // C4
  return normalizeRel(out);
}

std::vector<LoopRecognition> findLoops(const Program& program, const ProgramIndex& index,
                                       const IntervalResult& itv) {
  (void)program;
  std::vector<LoopRecognition> out;
  for (const Stmt* loopStmt : index.loops()) {
    LoopRecognition rec;
    rec.loop = loopStmt;
    rec.function = index.site(loopStmt->label).function->name;
    rec.nestingDepth = index.nestingDepth(*loopStmt);
    if (const Stmt* p = index.parentLoop(*loopStmt)) rec.parent = p->label;

    const Loop& l = *loopStmt->as<Loop>();
    std::vector<LoopDescriptor> accepted;
    std::optional<Rejection> best;
    std::string shapeFailure;
    for (const auto& cand : exitCandidates(l.cond)) {
      auto shape = extractShape(*loopStmt, cand, index);
      if (auto* why = std::get_if<std::string>(&shape)) {
        if (shapeFailure.empty()) shapeFailure = *why;
        continue;
      }
      auto& d = std::get<LoopDescriptor>(shape);
      d.function = rec.function;
      d.nestingDepth = rec.nestingDepth;
      d.parent = rec.parent;
      auto checked = checkSafety(d, index, itv);
      if (auto* ok = std::get_if<LoopDescriptor>(&checked)) {
        accepted.push_back(std::move(*ok));
      } else {
        auto& r = std::get<Rejection>(checked);
        if (!best || rejectionRank(r) > rejectionRank(*best)) best = r;
      }
    }
    if (!accepted.empty()) {
      LoopDescriptor primary = accepted.front();
      primary.alternatives.assign(accepted.begin() + 1, accepted.end());
      rec.outcome = std::move(primary);
    } else if (best) {
      rec.outcome = *best;
    } else {
      rec.outcome = reject(*loopStmt, RejectReason::NotIterationVariableBased,
                           shapeFailure.empty() ? "no exit condition comparing a variable"
                                                : shapeFailure);
    }
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<LoopRecognition> findLoops(const Program& program, const IntervalResult& itv) {
  ProgramIndex index(program);
  return findLoops(program, index, itv);
}

namespace {

nlohmann::json intervalJson(const Interval& i) {
  if (i.isBottom()) return nullptr;
  return {boundToJson(i.lo()), boundToJson(i.hi())};
}

}  // namespace

nlohmann::json toJson(const LoopDescriptor& d) {
  nlohmann::json j = {
      {"iter_var", d.iterVar},
      {"direction", toString(d.direction)},
      {"init",
       {{"label", d.initLabel.id},
        {"expr", unparseExpr(*d.initExpr)},
        {"class", toString(d.initClass)},
        {"interval", intervalJson(d.initRange)}}},
      {"condition",
       {{"label", d.condLabel.id},
        {"rel", spelling(d.rel)},
        {"bound", unparseExpr(*d.boundExpr)},
        {"class", toString(d.boundClass)},
        {"interval", intervalJson(d.boundRange)},
        {"normalized", std::string(spelling(d.normRel)) + " " + unparseExpr(*d.normBound)}}},
      {"step",
       {{"label", d.stepLabel.id},
        {"expr", unparseExpr(*d.stepExpr)},
        {"class", toString(d.stepClass)},
        {"interval", intervalJson(d.stepRange)}}},
      {"alternatives", d.alternatives.size()},
  };
  return j;
}

nlohmann::json toJson(const Rejection& r) {
  return {{"reason", toString(r.reason)}, {"detail", r.detail}};
}

}  // namespace loopcount
