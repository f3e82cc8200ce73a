#include "loopcount/interval_analysis.hpp"

#include <set>
#include <stdexcept>
#include <vector>

#include "loopcount/json_util.hpp"
#include "loopcount/program_index.hpp"

namespace loopcount {

const AbstractState& IntervalResult::at(Label label, ProgramPoint point) const {
  static const AbstractState kBottom = AbstractState::bottom();
  auto it = states_.find({label, point});
  return it == states_.end() ? kBottom : it->second;
}

void IntervalResult::record(Label label, ProgramPoint point, const AbstractState& state) {
  auto [it, inserted] = states_.try_emplace({label, point}, state);
  if (!inserted) it->second = combine(it->second, state);
}

nlohmann::json IntervalResult::toJson() const {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [key, state] : states_) {
    nlohmann::json env = nlohmann::json::object();
    for (const auto& [var, itv] : state.bindings()) {
      env[var] = {boundToJson(itv.lo()), boundToJson(itv.hi())};
    }
    nlohmann::json row = {{"label", key.first.id},
                          {"point", key.second == ProgramPoint::Before ? "before" : "after"},
                          {"env", env}};
    if (state.isBottom()) row["bottom"] = true;
    out.push_back(std::move(row));
  }
  return out;
}

namespace {

std::vector<std::string> addressArguments(const Call& call) {
  std::vector<std::string> out;
  for (const auto& a : call.args) {
    forEachSubExpr(*a, [&](const Expr& e) {
      if (const auto* u = e.as<Unary>(); u && u->op == UnaryOp::AddrOf) {
        out.push_back(u->operand->as<VarRef>()->name);
      }
    });
  }
  return out;
}

/// Effect of a call without looking into the callee.
AbstractState callSummary(const ProgramIndex& index, const Call& call, AbstractState s) {
  for (const auto& g : index.globalWrites(call.callee)) s.forget(g);
  for (const auto& v : addressArguments(call)) s.forget(v);
  if (call.result) s.forget(*call.result);
  return s;
}

/// Assignment-like statements that do not involve control flow or calls.
AbstractState simpleEffect(const Stmt& stmt, AbstractState s) {
  if (const auto* a = stmt.as<Assign>()) {
    s.set(a->target, evalExpr(*a->value, s));
  } else if (const auto* d = stmt.as<Decl>()) {
    if (!d->arraySize) s.set(d->name, d->init ? evalExpr(*d->init, s) : Interval::top());
  }
  return s;
}

class Analyzer {
 public:
  Analyzer(const Program& program, const IntervalOptions& options, IntervalResult& out)
      : program_(program), index_(program), options_(options), out_(out) {}

  void run() {
    const Function* entry = program_.entry();
    if (!entry) return;

    AbstractState globals;
    for (const auto& g : program_.globals) {
      const auto& d = *g->as<Decl>();
      out_.record(g->label, ProgramPoint::Before, globals);
      if (!d.arraySize) {
        globals.set(d.name, d.init ? evalExpr(*d.init, globals) : Interval::constant(0));
      }
      out_.record(g->label, ProgramPoint::After, globals);
    }
    runFunction(*entry, globals);
    // Functions reached through a call that was not inlined, and functions
    // never reached at all, are analysed from an all-top state.
    while (true) {
      const Function* next = nullptr;
      for (const auto& f : program_.functions) {
        if (standaloneDone_.count(f.name)) continue;
        if (needsStandalone_.count(f.name)) {
          next = &f;
          break;
        }
      }
      if (!next) {
        for (const auto& f : program_.functions) {
          if (!visited_.count(f.name)) {
            next = &f;
            break;
          }
        }
      }
      if (!next) break;
      standaloneDone_.insert(next->name);
      runFunction(*next, AbstractState::top());
    }
  }

 private:
  struct Frame {
    const Function* function = nullptr;
    int depth = 0;
    std::vector<AbstractState> returnStates;
    Interval returnValue = Interval::bottom();
    std::vector<std::vector<AbstractState>*> breakTargets;
  };

  void runFunction(const Function& f, const AbstractState& initial) {
    visited_.insert(f.name);
    Frame frame{&f, 0, {}, Interval::bottom(), {}};
    exec(*f.body, initial, frame);
  }

  AbstractState exec(const Stmt& s, const AbstractState& in, Frame& frame) {
    if (in.isBottom()) return in;
    out_.record(s.label, ProgramPoint::Before, in);
    AbstractState result = dispatch(s, in, frame);
    out_.record(s.label, ProgramPoint::After, result);
    return result;
  }

  AbstractState dispatch(const Stmt& s, const AbstractState& in, Frame& frame) {
    if (const auto* b = s.as<Block>()) {
      AbstractState cur = in;
      for (const auto& child : b->stmts) cur = exec(*child, cur, frame);
      return cur;
    }
    if (const auto* i = s.as<If>()) {
      AbstractState thenOut = exec(*i->then, filter(*i->cond, in, true), frame);
      AbstractState elseIn = filter(*i->cond, in, false);
      AbstractState elseOut = i->otherwise ? exec(*i->otherwise, elseIn, frame) : elseIn;
      return combine(thenOut, elseOut);
    }
    if (const auto* l = s.as<Loop>()) return loop(*l, in, frame);
    if (const auto* c = s.as<Call>()) return call(*c, in, frame);
    if (const auto* r = s.as<Return>()) {
      frame.returnStates.push_back(in);
      frame.returnValue =
          combine(frame.returnValue, r->value ? evalExpr(*r->value, in) : Interval::top());
      return AbstractState::bottom();
    }
    if (s.is<Break>()) {
      frame.breakTargets.back()->push_back(in);
      return AbstractState::bottom();
    }
    return simpleEffect(s, in);
  }

  AbstractState loop(const Loop& l, const AbstractState& in, Frame& frame) {
    AbstractState head = l.init ? exec(*l.init, in, frame) : in;
    while (true) {
      out_.record(l.condLabel, ProgramPoint::Before, head);
      std::vector<AbstractState> breaks;
      frame.breakTargets.push_back(&breaks);
      AbstractState back = exec(*l.body, filter(*l.cond, head, true), frame);
      if (l.step) back = exec(*l.step, back, frame);
      frame.breakTargets.pop_back();

      AbstractState next = widen(head, combine(head, back));
      if (next == head) {
        AbstractState exit = filter(*l.cond, head, false);
        out_.record(l.condLabel, ProgramPoint::After, exit);
        for (const auto& b : breaks) exit = combine(exit, b);
        return exit;
      }
      head = std::move(next);
    }
  }

  AbstractState call(const Call& c, const AbstractState& in, Frame& frame) {
    const Function* callee = program_.findFunction(c.callee);
    if (frame.depth >= options_.inlineDepth) {
      needsStandalone_.insert(c.callee);
      return callSummary(index_, c, in);
    }
    visited_.insert(c.callee);

    AbstractState calleeIn;
    for (const auto& g : index_.globals()) calleeIn.set(g, in.get(g));
    for (std::size_t k = 0; k < callee->params.size(); ++k) {
      const auto& p = callee->params[k];
      calleeIn.set(p.name, p.pointer ? Interval::top() : evalExpr(*c.args[k], in));
    }
    Frame inner{callee, frame.depth + 1, {}, Interval::bottom(), {}};
    AbstractState exit = exec(*callee->body, calleeIn, inner);
    Interval value = inner.returnValue;
    if (!exit.isBottom()) value = combine(value, Interval::top());
    for (const auto& r : inner.returnStates) exit = combine(exit, r);
    if (exit.isBottom()) return exit;

    AbstractState out = in;
    for (const auto& g : index_.globals()) out.set(g, exit.get(g));
    for (const auto& v : addressArguments(c)) out.forget(v);
    if (c.result) out.set(*c.result, value);
    return out;
  }

  const Program& program_;
  ProgramIndex index_;
  IntervalOptions options_;
  IntervalResult& out_;
  std::set<std::string> visited_;
  std::set<std::string> needsStandalone_;
  std::set<std::string> standaloneDone_;
};

}  // namespace

AbstractState transfer(const Program& program, const Stmt& stmt, const AbstractState& state,
                       Edge edge) {
  if (state.isBottom()) return state;
  if (const auto* i = stmt.as<If>()) {
    if (edge == Edge::Fall) throw std::invalid_argument("if statement needs a branch edge");
    return filter(*i->cond, state, edge == Edge::True);
  }
  if (const auto* l = stmt.as<Loop>()) {
    if (edge == Edge::Fall) throw std::invalid_argument("loop statement needs a branch edge");
    return filter(*l->cond, state, edge == Edge::True);
  }
  if (stmt.is<Block>()) throw std::invalid_argument("blocks have no single transfer function");
  if (stmt.is<Return>() || stmt.is<Break>()) return AbstractState::bottom();
  if (const auto* c = stmt.as<Call>()) return callSummary(ProgramIndex(program), *c, state);
  return simpleEffect(stmt, state);
}

IntervalResult analyze(const Program& program, const IntervalOptions& options) {
  IntervalResult result;
  Analyzer(program, options, result).run();
  return result;
}

}  // namespace loopcount
