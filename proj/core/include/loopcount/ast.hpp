#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "loopcount/integer.hpp"

namespace loopcount {

struct SourceSpan {
  std::string file;
  int line = 1;
  int column = 1;
  int length = 0;
};

/// Unique statement identity within a Program.
struct Label {
  int id = 0;
  friend auto operator<=>(const Label&, const Label&) = default;
};

std::string toString(Label label);

enum class UnaryOp { Neg, Not, AddrOf };

enum class BinaryOp { Add, Sub, Mul, Div, Mod, Lt, Gt, Le, Ge, Eq, Ne, And, Or };

/// Comparison relations as they appear in exit conditions.
enum class Relation { Lt, Le, Gt, Ge, Eq, Ne };

bool isComparison(BinaryOp op);
Relation toRelation(BinaryOp op);  // precondition: isComparison(op)
BinaryOp toBinaryOp(Relation rel);
/// a rel b  <=>  b mirror(rel) a
Relation mirror(Relation rel);
/// !(a rel b)  <=>  a negate(rel) b
Relation negate(Relation rel);
const char* spelling(BinaryOp op);
const char* spelling(UnaryOp op);
const char* spelling(Relation rel);

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct IntLit {
  Integer value;
};
struct VarRef {
  std::string name;
};
/// Opaque array element read `a[index]`.
struct ArrayRead {
  std::string array;
  ExprPtr index;
};
struct Unary {
  UnaryOp op;
  ExprPtr operand;
};
struct Binary {
  BinaryOp op;
  ExprPtr lhs;
  ExprPtr rhs;
};

struct Expr {
  std::variant<IntLit, VarRef, ArrayRead, Unary, Binary> node;
  SourceSpan span;

  template <class T>
  const T* as() const { return std::get_if<T>(&node); }
  template <class T>
  bool is() const { return std::holds_alternative<T>(node); }
};

ExprPtr makeLit(Integer value, SourceSpan span = {});
ExprPtr makeVar(std::string name, SourceSpan span = {});
ExprPtr makeArrayRead(std::string array, ExprPtr index, SourceSpan span = {});
ExprPtr makeUnary(UnaryOp op, ExprPtr operand, SourceSpan span = {});
ExprPtr makeBinary(BinaryOp op, ExprPtr lhs, ExprPtr rhs, SourceSpan span = {});

struct Stmt;
using StmtPtr = std::shared_ptr<const Stmt>;

/// x = value. Compound assignments and ++/-- are desugared into this form.
struct Assign {
  std::string target;
  ExprPtr value;
};
struct ArrayAssign {
  std::string array;
  ExprPtr index;
  ExprPtr value;
};
/// `int x;`, `int x = e;`, `int *p;`, `int a[N];`
struct Decl {
  std::string name;
  ExprPtr init;  // may be null
  bool pointer = false;
  std::optional<Integer> arraySize;
};
struct If {
  ExprPtr cond;
  StmtPtr then;
  StmtPtr otherwise;  // may be null
};

enum class LoopKind { While, For };

/// Both `while` and `for` loops. A for-loop `for (init; cond; step) body`
/// executes as `init; while (cond) { body; step }`; the three component
/// statements keep their own labels (l1 = init, l2 = condLabel, l3 = step).
struct Loop {
  LoopKind kind = LoopKind::While;
  StmtPtr init;  // for-loops only, may be null
  ExprPtr cond;
  Label condLabel;
  StmtPtr step;  // for-loops only, may be null
  StmtPtr body;
};
struct Block {
  std::vector<StmtPtr> stmts;
};
/// `f(args);` or `result = f(args);`
struct Call {
  std::optional<std::string> result;
  std::string callee;
  std::vector<ExprPtr> args;
};
struct Return {
  ExprPtr value;  // may be null
};
struct Break {};
struct Empty {};

struct Stmt {
  std::variant<Assign, ArrayAssign, Decl, If, Loop, Block, Call, Return, Break, Empty> node;
  Label label;
  SourceSpan span;

  template <class T>
  const T* as() const { return std::get_if<T>(&node); }
  template <class T>
  bool is() const { return std::holds_alternative<T>(node); }
};

struct Param {
  std::string name;
  bool pointer = false;
};

struct Function {
  std::string name;
  bool returnsInt = true;
  std::vector<Param> params;
  StmtPtr body;  // always a Block
  SourceSpan span;
};

struct Program {
  std::vector<StmtPtr> globals;  // Decl statements
  std::vector<Function> functions;

  const Function* findFunction(std::string_view name) const;
  /// `main` when present, otherwise the first function; null for an empty program.
  const Function* entry() const;
};

/// Structural equality ignoring source spans.
bool equalModuloSpans(const Expr& a, const Expr& b);
bool equalModuloSpans(const Stmt& a, const Stmt& b);
bool equalModuloSpans(const Program& a, const Program& b);

/// Pre-order traversal of every statement reachable from `root` (including
/// for-loop init/step statements).
void forEachStmt(const Stmt& root, const std::function<void(const Stmt&)>& visit);
void forEachStmt(const Program& program, const std::function<void(const Stmt&)>& visit);
/// Every expression node (pre-order, including sub-expressions) directly
/// owned by a statement, not descending into child statements.
void forEachOwnExpr(const Stmt& stmt, const std::function<void(const Expr&)>& visit);
void forEachSubExpr(const Expr& root, const std::function<void(const Expr&)>& visit);

}  // namespace loopcount

template <>
struct std::hash<loopcount::Label> {
  std::size_t operator()(const loopcount::Label& l) const noexcept { return std::hash<int>{}(l.id); }
};
