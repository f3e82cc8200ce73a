#include "loopcount/interpreter.hpp"

#include <set>

namespace loopcount {

Integer ExecutionProfile::count(Label label) const {
  auto it = counts.find(label);
  return it == counts.end() ? Integer(0) : it->second;
}

const char* toString(ExecutionProfile::Outcome o) {
  switch (o) {
    case ExecutionProfile::Outcome::Completed: return "completed";
    case ExecutionProfile::Outcome::FuelExhausted: return "fuel-exhausted";
    case ExecutionProfile::Outcome::DivisionByZero: return "division-by-zero";
    case ExecutionProfile::Outcome::CallDepthExceeded: return "call-depth-exceeded";
  }
  return "?";
}

namespace {

struct Trap {
  ExecutionProfile::Outcome outcome;
  std::string detail;
};

using ArrayStore = std::map<std::string, std::map<Integer, Integer>>;

struct Frame {
  Environment locals;
  ArrayStore arrays;
  Integer result = 0;
};

enum class Flow { Normal, Break, Return };

Integer addressOf(const std::string& name) {
  // FNV-1a; any fixed value per name will do since pointers are opaque.
  std::uint64_t h = 1469598103934665603ULL;
  for (char c : name) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  return Integer(h >> 16) + 4096;
}

class Machine {
 public:
  Machine(const Program& program, const InterpreterOptions& options, ExecutionProfile& profile)
      : program_(program), options_(options), profile_(profile) {
    for (const auto& g : program.globals) globalNames_.insert(g->as<Decl>()->name);
  }

  void run(const Environment& inputs) {
    Frame top;
    for (const auto& g : program_.globals) {
      const auto& d = *g->as<Decl>();
      tick(*g);
      if (d.arraySize) continue;
      globals_[d.name] = d.init ? eval(*d.init, top) : Integer(0);
    }
    for (const auto& [name, value] : inputs) {
      if (globalNames_.count(name)) globals_[name] = value;
    }
    const Function* entry = program_.entry();
    if (!entry) return;
    Frame frame;
    for (const auto& p : entry->params) {
      auto it = inputs.find(p.name);
      frame.locals[p.name] = it == inputs.end() ? Integer(0) : it->second;
    }
    exec(*entry->body, frame, 0);
    profile_.returnValue = frame.result;
  }

 private:
  bool isGlobal(const std::string& name, const Frame& f) const {
    return globalNames_.count(name) && !f.locals.count(name);
  }

  Integer read(const std::string& name, const Frame& f) const {
    const Environment& env = isGlobal(name, f) ? globals_ : f.locals;
    auto it = env.find(name);
    return it == env.end() ? Integer(0) : it->second;
  }

  void write(const std::string& name, Integer value, Frame& f) {
    (isGlobal(name, f) ? globals_ : f.locals)[name] = std::move(value);
  }

  std::map<Integer, Integer>& array(const std::string& name, Frame& f) {
    if (f.arrays.count(name) || !globalNames_.count(name)) return f.arrays[name];
    return globalArrays_[name];
  }

  void consume() {
    if (profile_.fuelUsed >= options_.fuel) {
      throw Trap{ExecutionProfile::Outcome::FuelExhausted, "fuel exhausted"};
    }
    ++profile_.fuelUsed;
  }

  void observe(Label label, const Frame& f) {
    if (options_.observer) options_.observer(label, f.locals, globals_);
  }

  void tick(const Stmt& s) {
    consume();
    ++profile_.counts[s.label];
  }

  Integer eval(const Expr& e, Frame& f) {
    if (const auto* l = e.as<IntLit>()) return l->value;
    if (const auto* v = e.as<VarRef>()) return read(v->name, f);
    if (const auto* a = e.as<ArrayRead>()) {
      Integer idx = eval(*a->index, f);
      auto& arr = array(a->array, f);
      auto it = arr.find(idx);
      return it == arr.end() ? Integer(0) : it->second;
    }
    if (const auto* u = e.as<Unary>()) {
      switch (u->op) {
        case UnaryOp::Neg: return -eval(*u->operand, f);
        case UnaryOp::Not: return eval(*u->operand, f) == 0 ? 1 : 0;
        case UnaryOp::AddrOf: return addressOf(u->operand->as<VarRef>()->name);
      }
    }
    const auto& b = *e.as<Binary>();
    if (b.op == BinaryOp::And) return eval(*b.lhs, f) != 0 && eval(*b.rhs, f) != 0 ? 1 : 0;
    if (b.op == BinaryOp::Or) return eval(*b.lhs, f) != 0 || eval(*b.rhs, f) != 0 ? 1 : 0;
    Integer l = eval(*b.lhs, f);
    Integer r = eval(*b.rhs, f);
    switch (b.op) {
      case BinaryOp::Add: return l + r;
      case BinaryOp::Sub: return l - r;
      case BinaryOp::Mul: return l * r;
      case BinaryOp::Div:
      case BinaryOp::Mod:
        if (r == 0) {
          throw Trap{ExecutionProfile::Outcome::DivisionByZero,
                     "division by zero at line " + std::to_string(e.span.line)};
        }
        return b.op == BinaryOp::Div ? truncDiv(l, r) : truncMod(l, r);
      case BinaryOp::Lt: return l < r ? 1 : 0;
      case BinaryOp::Gt: return l > r ? 1 : 0;
      case BinaryOp::Le: return l <= r ? 1 : 0;
      case BinaryOp::Ge: return l >= r ? 1 : 0;
      case BinaryOp::Eq: return l == r ? 1 : 0;
      case BinaryOp::Ne: return l != r ? 1 : 0;
      default: break;
    }
    return 0;
  }

  Flow exec(const Stmt& s, Frame& f, int depth) {
    observe(s.label, f);
    tick(s);
    if (const auto* a = s.as<Assign>()) {
      write(a->target, eval(*a->value, f), f);
    } else if (const auto* a = s.as<ArrayAssign>()) {
      Integer idx = eval(*a->index, f);
      Integer v = eval(*a->value, f);
      array(a->array, f)[idx] = std::move(v);
    } else if (const auto* d = s.as<Decl>()) {
      if (d->arraySize) {
        f.arrays[d->name].clear();
      } else {
        f.locals[d->name] = d->init ? eval(*d->init, f) : Integer(0);
      }
    } else if (const auto* i = s.as<If>()) {
      if (eval(*i->cond, f) != 0) return exec(*i->then, f, depth);
      if (i->otherwise) return exec(*i->otherwise, f, depth);
    } else if (const auto* l = s.as<Loop>()) {
      return loop(*l, f, depth);
    } else if (const auto* b = s.as<Block>()) {
      for (const auto& child : b->stmts) {
        Flow fl = exec(*child, f, depth);
        if (fl != Flow::Normal) return fl;
      }
    } else if (const auto* c = s.as<Call>()) {
      Integer r = call(*c, f, depth);
      if (c->result) write(*c->result, std::move(r), f);
    } else if (const auto* r = s.as<Return>()) {
      f.result = r->value ? eval(*r->value, f) : Integer(0);
      return Flow::Return;
    } else if (s.is<Break>()) {
      return Flow::Break;
    }
    return Flow::Normal;
  }

  Flow loop(const Loop& l, Frame& f, int depth) {
    if (l.init) {
      if (exec(*l.init, f, depth) == Flow::Return) return Flow::Return;
    }
    while (true) {
      observe(l.condLabel, f);
      consume();
      ++profile_.counts[l.condLabel];
      if (eval(*l.cond, f) == 0) return Flow::Normal;
      Flow fl = exec(*l.body, f, depth);
      if (fl == Flow::Break) return Flow::Normal;
      if (fl == Flow::Return) return fl;
      if (l.step) exec(*l.step, f, depth);
    }
  }

  Integer call(const Call& c, Frame& f, int depth) {
    if (depth + 1 > options_.maxCallDepth) {
      throw Trap{ExecutionProfile::Outcome::CallDepthExceeded, "call depth limit reached"};
    }
    const Function* callee = program_.findFunction(c.callee);
    Frame inner;
    for (std::size_t k = 0; k < callee->params.size(); ++k) {
      inner.locals[callee->params[k].name] = eval(*c.args[k], f);
    }
    exec(*callee->body, inner, depth + 1);
    return inner.result;
  }

  const Program& program_;
  const InterpreterOptions& options_;
  ExecutionProfile& profile_;
  std::set<std::string> globalNames_;
  Environment globals_;
  ArrayStore globalArrays_;
};

}  // namespace

ExecutionProfile interpret(const Program& program, const Environment& inputs,
                           const InterpreterOptions& options) {
  ExecutionProfile profile;
  Machine m(program, options, profile);
  try {
    m.run(inputs);
  } catch (const Trap& t) {
    profile.outcome = t.outcome;
    profile.detail = t.detail;
  }
  return profile;
}

}  // namespace loopcount
