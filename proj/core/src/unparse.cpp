#include "loopcount/unparse.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

namespace loopcount {

namespace {

int precedence(BinaryOp op) {
  switch (op) {
    case BinaryOp::Or: return 1;
    case BinaryOp::And: return 2;
    case BinaryOp::Eq:
    case BinaryOp::Ne: return 3;
    case BinaryOp::Lt:
    case BinaryOp::Gt:
    case BinaryOp::Le:
    case BinaryOp::Ge: return 4;
    case BinaryOp::Add:
    case BinaryOp::Sub: return 5;
    case BinaryOp::Mul:
    case BinaryOp::Div:
    case BinaryOp::Mod: return 6;
  }
  return 0;
}

constexpr int kUnaryPrec = 7;
constexpr int kAtomPrec = 8;

int precedence(const Expr& e) {
  if (const auto* b = e.as<Binary>()) return precedence(b->op);
  if (e.is<Unary>()) return kUnaryPrec;
  return kAtomPrec;
}

std::string render(const Expr& e);

std::string renderChild(const Expr& child, int parentPrec, bool rightSide) {
  std::string s = render(child);
  int p = precedence(child);
  if (p < parentPrec || (rightSide && p == parentPrec)) return "(" + s + ")";
  return s;
}

std::string render(const Expr& e) {
  if (const auto* lit = e.as<IntLit>()) {
    std::string s = toString(lit->value);
    return lit->value < 0 ? "(" + s + ")" : s;
  }
  if (const auto* v = e.as<VarRef>()) return v->name;
  if (const auto* a = e.as<ArrayRead>()) return a->array + "[" + render(*a->index) + "]";
  if (const auto* u = e.as<Unary>()) {
    std::string operand = renderChild(*u->operand, kUnaryPrec, false);
    if (!operand.empty() && (operand[0] == '-' || operand[0] == '&' || operand[0] == '!') &&
        u->op != UnaryOp::Not) {
      operand = "(" + operand + ")";
    }
    return std::string(spelling(u->op)) + operand;
  }
  const auto& b = *e.as<Binary>();
  int p = precedence(b.op);
  return renderChild(*b.lhs, p, false) + " " + spelling(b.op) + " " + renderChild(*b.rhs, p, true);
}

class Printer {
 public:
  Printer(const Program& program, const std::vector<Annotation>& annotations) : program_(program) {
    std::map<Label, Label> anchor;
    forEachStmt(program, [&](const Stmt& s) {
      anchor[s.label] = s.label;
      if (const auto* l = s.as<Loop>()) {
        anchor[l->condLabel] = s.label;
        if (l->init) anchor[l->init->label] = s.label;
        if (l->step) anchor[l->step->label] = s.label;
      }
    });
    for (const auto& [label, text] : annotations) {
      auto it = anchor.find(label);
      if (it == anchor.end()) {
        throw std::invalid_argument("annotation refers to unknown label " + toString(label));
      }
      notes_[it->second].push_back(text);
    }
  }

  std::string run() {
    for (const auto& g : program_.globals) statement(*g, 0);
    for (std::size_t i = 0; i < program_.functions.size(); ++i) {
      if (i > 0 || !program_.globals.empty()) out_ << "\n";
      function(program_.functions[i]);
    }
    return out_.str();
  }

 private:
  void indent(int depth) {
    for (int i = 0; i < depth; ++i) out_ << "    ";
  }

  void annotations(const Stmt& s, int depth) {
    auto it = notes_.find(s.label);
    if (it == notes_.end()) return;
    for (const auto& text : it->second) {
      indent(depth);
      out_ << kPragmaPrefix << text << "\n";
    }
  }

  void function(const Function& f) {
    annotations(*f.body, 0);
    out_ << (f.returnsInt ? "int " : "void ") << f.name << "(";
    for (std::size_t i = 0; i < f.params.size(); ++i) {
      if (i) out_ << ", ";
      out_ << "int " << (f.params[i].pointer ? "*" : "") << f.params[i].name;
    }
    out_ << ") ";
    blockBody(*f.body->as<Block>(), 0);
    out_ << "\n";
  }

  void blockBody(const Block& b, int depth) {
    out_ << "{\n";
    for (const auto& s : b.stmts) statement(*s, depth + 1);
    indent(depth);
    out_ << "}";
  }

  static std::string decl(const Decl& d) {
    std::string s = "int " + std::string(d.pointer ? "*" : "") + d.name;
    if (d.arraySize) s += "[" + toString(*d.arraySize) + "]";
    if (d.init) s += " = " + render(*d.init);
    return s;
  }

  /// Statements that can appear in a for-loop header, without the ';'.
  static std::string simple(const Stmt& s) {
    if (const auto* a = s.as<Assign>()) return a->target + " = " + render(*a->value);
    if (const auto* a = s.as<ArrayAssign>()) {
      return a->array + "[" + render(*a->index) + "] = " + render(*a->value);
    }
    if (const auto* d = s.as<Decl>()) return decl(*d);
    if (const auto* c = s.as<Call>()) {
      std::string r = c->result ? *c->result + " = " : "";
      r += c->callee + "(";
      for (std::size_t i = 0; i < c->args.size(); ++i) {
        if (i) r += ", ";
        r += render(*c->args[i]);
      }
      return r + ")";
    }
    throw std::logic_error("statement cannot be rendered inline");
  }

  /// Body of if/loop: blocks stay on the header line, others go on the next.
  void nested(const Stmt& s, int depth) {
    if (const auto* b = s.as<Block>(); b && !notes_.count(s.label)) {
      out_ << " ";
      blockBody(*b, depth);
      out_ << "\n";
    } else {
      out_ << "\n";
      statement(s, depth + 1);
    }
  }

  void statement(const Stmt& s, int depth) {
    annotations(s, depth);
    indent(depth);
    std::visit(
        [&](const auto& node) {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, Block>) {
            blockBody(node, depth);
            out_ << "\n";
          } else if constexpr (std::is_same_v<T, If>) {
            out_ << "if (" << render(*node.cond) << ")";
            nested(*node.then, depth);
            if (node.otherwise) {
              indent(depth);
              out_ << "else";
              nested(*node.otherwise, depth);
            }
          } else if constexpr (std::is_same_v<T, Loop>) {
            if (node.kind == LoopKind::For) {
              out_ << "for (" << (node.init ? simple(*node.init) : "") << "; "
                   << render(*node.cond) << "; " << (node.step ? simple(*node.step) : "") << ")";
            } else {
              out_ << "while (" << render(*node.cond) << ")";
            }
            nested(*node.body, depth);
          } else if constexpr (std::is_same_v<T, Return>) {
            out_ << "return" << (node.value ? " " + render(*node.value) : "") << ";\n";
          } else if constexpr (std::is_same_v<T, Break>) {
            out_ << "break;\n";
          } else if constexpr (std::is_same_v<T, Empty>) {
            out_ << ";\n";
          } else {
            out_ << simple(s) << ";\n";
          }
        },
        s.node);
  }

  const Program& program_;
  std::map<Label, std::vector<std::string>> notes_;
  std::ostringstream out_;
};

}  // namespace

std::string unparse(const Program& program, const std::vector<Annotation>& annotations) {
  return Printer(program, annotations).run();
}

std::string unparseExpr(const Expr& expr) { return render(expr); }

}  // namespace loopcount
