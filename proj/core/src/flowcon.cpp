#include "loopcount/flowcon.hpp"

#include <optional>

#include "loopcount/json_util.hpp"

namespace loopcount {

const char* toString(FlowResult::Status s) {
  switch (s) {
    case FlowResult::Status::Ok: return "constrained";
    case FlowResult::Status::Rejected: return "rejected";
    case FlowResult::Status::Unbounded: return "unbounded";
    case FlowResult::Status::BudgetExceeded: return "budget-exceeded";
  }
  return "?";
}

nlohmann::json FlowResult::toJson() const {
  nlohmann::json j = {{"status", toString(status)},
                      {"n", ok() ? integerToJson(constraint.n) : nlohmann::json(nullptr)},
                      {"relative_to", constraint.relativeTo.id},
                      {"depth", constraint.depth},
                      {"exact", ok() ? nlohmann::json(constraint.exact) : nlohmann::json(nullptr)}};
  if (!reason.empty()) j["reason"] = reason;
  return j;
}

void applyStrideOverestimation(LevelConstraints& level) {
  level.congruence.reset();
  level.exact = false;
}

namespace {

/// lin + residual, where lin ranges over FD variables and residual is the
/// interval of everything else.
struct Affine {
  LinExpr lin;
  Interval rest = Interval::constant(0);
};

class Linearizer {
 public:
  Linearizer(const std::map<std::string, FdVarId>& vars, const AbstractState& state)
      : vars_(vars), state_(state) {}

  /// nullopt when the expression is not linear in the FD variables.
  std::optional<Affine> run(const Expr& e) const {
    if (!mentionsFdVar(e)) {
      return Affine{LinExpr(), state_.isBottom() ? Interval::bottom() : evalExpr(e, state_)};
    }
    if (const auto* v = e.as<VarRef>()) return Affine{LinExpr::var(vars_.at(v->name)), Interval::constant(0)};
    if (const auto* u = e.as<Unary>(); u && u->op == UnaryOp::Neg) {
      auto x = run(*u->operand);
      if (!x) return std::nullopt;
      return Affine{-x->lin, -x->rest};
    }
    const auto* b = e.as<Binary>();
    if (!b) return std::nullopt;
    if (b->op == BinaryOp::Add || b->op == BinaryOp::Sub) {
      auto l = run(*b->lhs), r = run(*b->rhs);
      if (!l || !r) return std::nullopt;
      if (b->op == BinaryOp::Add) return Affine{l->lin + r->lin, l->rest + r->rest};
      return Affine{l->lin - r->lin, l->rest - r->rest};
    }
    if (b->op == BinaryOp::Mul) {
      const Expr* scalar = mentionsFdVar(*b->lhs) ? b->rhs.get() : b->lhs.get();
      const Expr* other = scalar == b->lhs.get() ? b->rhs.get() : b->lhs.get();
      if (mentionsFdVar(*scalar) || state_.isBottom()) return std::nullopt;
      Interval k = evalExpr(*scalar, state_);
      if (!k.isSingleton()) return std::nullopt;
      auto x = run(*other);
      if (!x) return std::nullopt;
      return Affine{x->lin * k.lo().value(), x->rest * k};
    }
    return std::nullopt;
  }

 private:
  bool mentionsFdVar(const Expr& e) const {
    for (const auto& v : variablesIn(e)) {
      if (vars_.count(v)) return true;
    }
    return false;
  }

  const std::map<std::string, FdVarId>& vars_;
  const AbstractState& state_;
};

/// Whether the step of `outer` (a statement in its body) runs before the
/// part of the body containing `inner`, in which case the outer iteration
/// variable no longer equals its value at the loop test.
bool stepPrecedes(const LoopDescriptor& outer, const LoopDescriptor& inner, const ProgramIndex& index) {
  if (outer.stepInHeader) return false;
  const StmtSite& stepSite = index.site(outer.stepLabel);
  const Stmt* s = index.stmt(inner.loopLabel);
  while (s) {
    const StmtSite& site = index.site(s->label);
    if (site.parent == stepSite.parent) return stepSite.indexInBlock < site.indexInBlock;
    s = site.parent;
  }
  return true;
}

}  // namespace

std::variant<NestTranslation, NestRejection> translateNest(
    const std::vector<const LoopDescriptor*>& nest, const ProgramIndex& index,
    const IntervalResult& itv, const SolverConfig& config) {
  NestTranslation out{Csp(config), {}, {}, {}};
  for (const LoopDescriptor* d : nest) {
    FdVarId v = out.csp.newVar();
    out.names.push_back(d->iterVar);
    LevelConstraints level;
    level.loopLabel = d->loopLabel;
    level.var = v;

    // Outer iteration variables visible as FD variables at this level.
    std::map<std::string, FdVarId> visible;
    for (std::size_t k = 0; k < out.levels.size(); ++k) {
      if (!stepPrecedes(*nest[k], *d, index)) {
        visible[nest[k]->iterVar] = out.levels[k].var;
      } else {
        level.exact = false;
      }
    }
    auto reject = [&](std::string why) { return NestRejection{d->loopLabel, std::move(why)}; };

    if (!isLoopInvariant(d->stepClass)) return reject("step of " + d->iterVar + " is not loop invariant");
    const bool up = d->direction == Direction::Up;

    auto a = Linearizer(visible, itv.before(d->initLabel)).run(*d->initExpr);
    if (!a) return reject("init of " + d->iterVar + " is not linear in the iteration variables");
    if (a->rest.isBottom()) return reject("init of " + d->iterVar + " is unreachable");
    const Bound& aEdge = up ? a->rest.lo() : a->rest.hi();
    if (!aEdge.isFinite()) return reject("init of " + d->iterVar + " is unbounded");
    LinExpr aExpr = a->lin + LinExpr(aEdge.value());
    if (!a->rest.isSingleton()) level.exact = false;

    LinExpr iv = LinExpr::var(v);
    level.bounds.push_back(up ? ge(iv, aExpr) : le(iv, aExpr));

    std::vector<const LoopDescriptor*> exits{d};
    for (const auto& alt : d->alternatives) {
      if (alt.iterVar == d->iterVar && alt.direction == d->direction) exits.push_back(&alt);
    }
    bool haveBound = false;
    for (const LoopDescriptor* e : exits) {
      auto b = Linearizer(visible, itv.before(e->condLabel)).run(*e->normBound);
      if (!b || b->rest.isBottom()) continue;
      const Bound& bEdge = up ? b->rest.hi() : b->rest.lo();
      if (!bEdge.isFinite()) continue;
      if (!b->rest.isSingleton()) level.exact = false;
      level.bounds.push_back(up ? le(iv, b->lin + LinExpr(bEdge.value()))
                                : ge(iv, b->lin + LinExpr(bEdge.value())));
      haveBound = true;
    }
    if (!haveBound) return reject("exit bound of " + d->iterVar + " is unbounded or not linear");

    if (d->stepRange.isSingleton()) {
      Integer c = abs(d->stepRange.lo().value());
      if (c > 1) {
        level.congruence = congruenceZero(iv - aExpr, c);
        if (!a->rest.isSingleton()) applyStrideOverestimation(level);
      }
    } else {
      level.exact = false;
    }

    for (const auto& c : level.bounds) out.csp.post(c);
    if (level.congruence) out.csp.post(*level.congruence);
    out.varMap[d->iterVar] = v;
    out.levels.push_back(std::move(level));
  }
  return out;
}

std::vector<FlowResult> analyzeNest(const std::vector<const LoopDescriptor*>& nest,
                                    const ProgramIndex& index, const IntervalResult& itv,
                                    const SolverConfig& config) {
  std::vector<FlowResult> results;
  if (nest.empty()) return results;
  const Label outermost = nest.front()->loopLabel;
  for (std::size_t depth = 1; depth <= nest.size(); ++depth) {
    std::vector<const LoopDescriptor*> prefix(nest.begin(), nest.begin() + depth);
    FlowResult r;
    r.constraint.loopLabel = prefix.back()->loopLabel;
    r.constraint.relativeTo = outermost;
    r.constraint.depth = static_cast<int>(depth);
    auto t = translateNest(prefix, index, itv, config);
    if (auto* rej = std::get_if<NestRejection>(&t)) {
      r.status = FlowResult::Status::Rejected;
      r.reason = rej->detail;
      results.push_back(std::move(r));
      continue;
    }
    auto& tr = std::get<NestTranslation>(t);
    std::vector<FdVarId> vars;
    bool exact = true;
    for (const auto& level : tr.levels) {
      vars.push_back(level.var);
      exact = exact && level.exact;
    }
    CountResult c = tr.csp.countSolutions(vars);
    r.nodes = c.nodes;
    switch (c.status) {
      case CountResult::Status::Ok:
        r.status = FlowResult::Status::Ok;
        r.constraint.n = c.count;
        r.constraint.exact = exact;
        break;
      case CountResult::Status::Unbounded:
        r.status = FlowResult::Status::Unbounded;
        r.reason = "iteration space is infinite";
        break;
      case CountResult::Status::BudgetExceeded:
        r.status = FlowResult::Status::BudgetExceeded;
        r.reason = "enumeration cap reached";
        break;
    }
    results.push_back(std::move(r));
  }
  return results;
}

BoundResult degenerateToLoopBound(const LoopDescriptor& loop, const ProgramIndex& index,
                                  const IntervalResult& itv, const SolverConfig& config) {
  FlowResult r = analyzeNest({&loop}, index, itv, config).front();
  switch (r.status) {
    case FlowResult::Status::Ok: return BoundResult::bound(r.constraint.n);
    case FlowResult::Status::Unbounded: return BoundResult::unbounded(r.reason);
    default: return BoundResult::notApplicable(r.reason);
  }
}

std::vector<const LoopDescriptor*> nestOf(const LoopDescriptor& loop,
                                          const std::vector<LoopRecognition>& loops) {
  std::map<Label, const LoopRecognition*> byLabel;
  for (const auto& l : loops) byLabel[l.loop->label] = &l;
  std::vector<const LoopDescriptor*> chain{&loop};
  std::optional<Label> parent = loop.parent;
  while (parent) {
    auto it = byLabel.find(*parent);
    if (it == byLabel.end() || !it->second->descriptor()) break;
    chain.insert(chain.begin(), it->second->descriptor());
    parent = it->second->parent;
  }
  return chain;
}

}  // namespace loopcount
