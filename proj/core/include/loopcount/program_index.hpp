#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "loopcount/ast.hpp"

namespace loopcount {

/// Where a statement sits in the tree.
struct StmtSite {
  const Function* function = nullptr;  // null for globals
  const Stmt* parent = nullptr;         // enclosing Block/If/Loop, null at function top
  std::size_t indexInBlock = 0;         // position when parent is a Block
  const Stmt* enclosingLoop = nullptr;  // innermost loop whose body contains the statement
};

/// Read-only lookup tables over a Program. The Program must outlive the index.
class ProgramIndex {
 public:
  explicit ProgramIndex(const Program& program);

  const Program& program() const { return program_; }

  bool isGlobal(std::string_view name) const { return globals_.count(std::string(name)) > 0; }
  const std::set<std::string>& globals() const { return globals_; }

  /// Globals written by a function, directly or through callees, including
  /// globals whose address is passed to a call.
  const std::set<std::string>& globalWrites(std::string_view function) const;

  const Stmt* stmt(Label label) const;
  const StmtSite& site(Label label) const;

  /// Every loop in pre-order (outer loops before their inner loops).
  const std::vector<const Stmt*>& loops() const { return loops_; }
  const Stmt* parentLoop(const Stmt& loop) const;
  int nestingDepth(const Stmt& loop) const;

 private:
  void indexStmt(const Stmt& s, const Function* fn, const Stmt* parent, std::size_t index,
                 const Stmt* loop);

  const Program& program_;
  std::set<std::string> globals_;
  std::map<std::string, std::set<std::string>, std::less<>> globalWrites_;
  std::map<Label, const Stmt*> stmts_;
  std::map<Label, StmtSite> sites_;
  std::vector<const Stmt*> loops_;
};

/// Variables occurring in an expression (scalars only; array names excluded).
std::set<std::string> variablesIn(const Expr& e);

/// Variables a statement (recursively) may write: assignment targets,
/// declarations, call results, globals written by callees, and variables
/// whose address is passed to a call.
std::set<std::string> writtenVariables(const Stmt& s, const ProgramIndex& index);

/// Whether `&name` occurs anywhere below `root`.
bool takesAddressOf(const Stmt& root, std::string_view name);

}  // namespace loopcount
