#include "loopcount/ast.hpp"

#include <stdexcept>

namespace loopcount {

std::string toString(Label label) { return std::to_string(label.id); }

bool isComparison(BinaryOp op) {
  switch (op) {
    case BinaryOp::Lt:
    case BinaryOp::Gt:
    case BinaryOp::Le:
    case BinaryOp::Ge:
    case BinaryOp::Eq:
    case BinaryOp::Ne:
      return true;
    default:
      return false;
  }
}

Relation toRelation(BinaryOp op) {
  switch (op) {
    case BinaryOp::Lt: return Relation::Lt;
    case BinaryOp::Gt: return Relation::Gt;
    case BinaryOp::Le: return Relation::Le;
    case BinaryOp::Ge: return Relation::Ge;
    case BinaryOp::Eq: return Relation::Eq;
    case BinaryOp::Ne: return Relation::Ne;
    default: throw std::logic_error("not a comparison operator");
  }
}

BinaryOp toBinaryOp(Relation rel) {
  switch (rel) {
    case Relation::Lt: return BinaryOp::Lt;
    case Relation::Le: return BinaryOp::Le;
    case Relation::Gt: return BinaryOp::Gt;
    case Relation::Ge: return BinaryOp::Ge;
    case Relation::Eq: return BinaryOp::Eq;
    case Relation::Ne: return BinaryOp::Ne;
  }
  return BinaryOp::Eq;
}

Relation mirror(Relation rel) {
  switch (rel) {
    case Relation::Lt: return Relation::Gt;
    case Relation::Le: return Relation::Ge;
    case Relation::Gt: return Relation::Lt;
    case Relation::Ge: return Relation::Le;
    default: return rel;
  }
}

Relation negate(Relation rel) {
  switch (rel) {
    case Relation::Lt: return Relation::Ge;
    case Relation::Le: return Relation::Gt;
    case Relation::Gt: return Relation::Le;
    case Relation::Ge: return Relation::Lt;
    case Relation::Eq: return Relation::Ne;
    case Relation::Ne: return Relation::Eq;
  }
  return rel;
}

const char* spelling(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::Mod: return "%";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Ge: return ">=";
    case BinaryOp::Eq: return "==";
    case BinaryOp::Ne: return "!=";
    case BinaryOp::And: return "&&";
    case BinaryOp::Or: return "||";
  }
  return "?";
}

const char* spelling(UnaryOp op) {
  switch (op) {
    case UnaryOp::Neg: return "-";
    case UnaryOp::Not: return "!";
    case UnaryOp::AddrOf: return "&";
  }
  return "?";
}

const char* spelling(Relation rel) { return spelling(toBinaryOp(rel)); }

ExprPtr makeLit(Integer value, SourceSpan span) {
  return std::make_shared<const Expr>(Expr{IntLit{std::move(value)}, std::move(span)});
}

ExprPtr makeVar(std::string name, SourceSpan span) {
  return std::make_shared<const Expr>(Expr{VarRef{std::move(name)}, std::move(span)});
}

ExprPtr makeArrayRead(std::string array, ExprPtr index, SourceSpan span) {
  return std::make_shared<const Expr>(
      Expr{ArrayRead{std::move(array), std::move(index)}, std::move(span)});
}

ExprPtr makeUnary(UnaryOp op, ExprPtr operand, SourceSpan span) {
  return std::make_shared<const Expr>(Expr{Unary{op, std::move(operand)}, std::move(span)});
}

ExprPtr makeBinary(BinaryOp op, ExprPtr lhs, ExprPtr rhs, SourceSpan span) {
  return std::make_shared<const Expr>(
      Expr{Binary{op, std::move(lhs), std::move(rhs)}, std::move(span)});
}

const Function* Program::findFunction(std::string_view name) const {
  for (const auto& f : functions) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

const Function* Program::entry() const {
  if (const auto* m = findFunction("main")) return m;
  return functions.empty() ? nullptr : &functions.front();
}

namespace {

bool eqPtr(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return !a && !b;
  return equalModuloSpans(*a, *b);
}

bool eqPtr(const StmtPtr& a, const StmtPtr& b) {
  if (!a || !b) return !a && !b;
  return equalModuloSpans(*a, *b);
}

template <class T>
bool eqVec(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!eqPtr(a[i], b[i])) return false;
  }
  return true;
}

struct ExprEq {
  const Expr& other;
  bool operator()(const IntLit& a) const {
    const auto* b = other.as<IntLit>();
    return b && a.value == b->value;
  }
  bool operator()(const VarRef& a) const {
    const auto* b = other.as<VarRef>();
    return b && a.name == b->name;
  }
  bool operator()(const ArrayRead& a) const {
    const auto* b = other.as<ArrayRead>();
    return b && a.array == b->array && eqPtr(a.index, b->index);
  }
  bool operator()(const Unary& a) const {
    const auto* b = other.as<Unary>();
    return b && a.op == b->op && eqPtr(a.operand, b->operand);
  }
  bool operator()(const Binary& a) const {
    const auto* b = other.as<Binary>();
    return b && a.op == b->op && eqPtr(a.lhs, b->lhs) && eqPtr(a.rhs, b->rhs);
  }
};

struct StmtEq {
  const Stmt& other;
  bool operator()(const Assign& a) const {
    const auto* b = other.as<Assign>();
    return b && a.target == b->target && eqPtr(a.value, b->value);
  }
  bool operator()(const ArrayAssign& a) const {
    const auto* b = other.as<ArrayAssign>();
    return b && a.array == b->array && eqPtr(a.index, b->index) && eqPtr(a.value, b->value);
  }
  bool operator()(const Decl& a) const {
    const auto* b = other.as<Decl>();
    return b && a.name == b->name && a.pointer == b->pointer && a.arraySize == b->arraySize &&
           eqPtr(a.init, b->init);
  }
  bool operator()(const If& a) const {
    const auto* b = other.as<If>();
    return b && eqPtr(a.cond, b->cond) && eqPtr(a.then, b->then) &&
           eqPtr(a.otherwise, b->otherwise);
  }
  bool operator()(const Loop& a) const {
    const auto* b = other.as<Loop>();
    return b && a.kind == b->kind && a.condLabel == b->condLabel && eqPtr(a.init, b->init) &&
           eqPtr(a.cond, b->cond) && eqPtr(a.step, b->step) && eqPtr(a.body, b->body);
  }
  bool operator()(const Block& a) const {
    const auto* b = other.as<Block>();
    return b && eqVec(a.stmts, b->stmts);
  }
  bool operator()(const Call& a) const {
    const auto* b = other.as<Call>();
    return b && a.result == b->result && a.callee == b->callee && eqVec(a.args, b->args);
  }
  bool operator()(const Return& a) const {
    const auto* b = other.as<Return>();
    return b && eqPtr(a.value, b->value);
  }
  bool operator()(const Break&) const { return other.is<Break>(); }
  bool operator()(const Empty&) const { return other.is<Empty>(); }
};

}  // namespace

bool equalModuloSpans(const Expr& a, const Expr& b) { return std::visit(ExprEq{b}, a.node); }

bool equalModuloSpans(const Stmt& a, const Stmt& b) {
  return a.label == b.label && std::visit(StmtEq{b}, a.node);
}

bool equalModuloSpans(const Program& a, const Program& b) {
  if (!eqVec(a.globals, b.globals)) return false;
  if (a.functions.size() != b.functions.size()) return false;
  for (std::size_t i = 0; i < a.functions.size(); ++i) {
    const auto& fa = a.functions[i];
    const auto& fb = b.functions[i];
    if (fa.name != fb.name || fa.returnsInt != fb.returnsInt) return false;
    if (fa.params.size() != fb.params.size()) return false;
    for (std::size_t k = 0; k < fa.params.size(); ++k) {
      if (fa.params[k].name != fb.params[k].name || fa.params[k].pointer != fb.params[k].pointer) {
        return false;
      }
    }
    if (!eqPtr(fa.body, fb.body)) return false;
  }
  return true;
}

void forEachStmt(const Stmt& root, const std::function<void(const Stmt&)>& visit) {
  visit(root);
  if (const auto* b = root.as<Block>()) {
    for (const auto& s : b->stmts) forEachStmt(*s, visit);
  } else if (const auto* i = root.as<If>()) {
    forEachStmt(*i->then, visit);
    if (i->otherwise) forEachStmt(*i->otherwise, visit);
  } else if (const auto* l = root.as<Loop>()) {
    if (l->init) forEachStmt(*l->init, visit);
    forEachStmt(*l->body, visit);
    if (l->step) forEachStmt(*l->step, visit);
  }
}

void forEachStmt(const Program& program, const std::function<void(const Stmt&)>& visit) {
  for (const auto& g : program.globals) forEachStmt(*g, visit);
  for (const auto& f : program.functions) forEachStmt(*f.body, visit);
}

void forEachSubExpr(const Expr& root, const std::function<void(const Expr&)>& visit) {
  visit(root);
  if (const auto* a = root.as<ArrayRead>()) {
    forEachSubExpr(*a->index, visit);
  } else if (const auto* u = root.as<Unary>()) {
    forEachSubExpr(*u->operand, visit);
  } else if (const auto* b = root.as<Binary>()) {
    forEachSubExpr(*b->lhs, visit);
    forEachSubExpr(*b->rhs, visit);
  }
}

void forEachOwnExpr(const Stmt& stmt, const std::function<void(const Expr&)>& visit) {
  auto walk = [&](const ExprPtr& e) {
    if (e) forEachSubExpr(*e, visit);
  };
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Assign>) {
          walk(node.value);
        } else if constexpr (std::is_same_v<T, ArrayAssign>) {
          walk(node.index);
          walk(node.value);
        } else if constexpr (std::is_same_v<T, Decl>) {
          walk(node.init);
        } else if constexpr (std::is_same_v<T, If>) {
          walk(node.cond);
        } else if constexpr (std::is_same_v<T, Loop>) {
          walk(node.cond);
        } else if constexpr (std::is_same_v<T, Call>) {
          for (const auto& a : node.args) walk(a);
        } else if constexpr (std::is_same_v<T, Return>) {
          walk(node.value);
        }
      },
      stmt.node);
}

}  // namespace loopcount
