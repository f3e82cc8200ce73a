#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "loopcount/fd_solver.hpp"

namespace loopcount {

/// A CSP read from the debug text format, with its variable names.
struct TextCsp {
  Csp csp;
  std::vector<std::string> names;  // indexed by FdVarId
  std::map<std::string, FdVarId> ids;

  FdVarId id(const std::string& name) const { return ids.at(name); }
};

class CspSyntaxError : public std::runtime_error {
 public:
  CspSyntaxError(int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

/// One statement per line; `%` starts a comment. Lines are
///   X in LO..HI          (bounds may be -inf / +inf)
///   X in LO..HI step M   (members LO, LO+M, ...)
///   LIN REL LIN          (REL one of <=, >=, =, <, >)
///   (LIN) mod M = 0
/// where LIN is a linear expression such as `2*J - I + 3`. Variables are
/// numbered in order of first appearance. Declared domains become variable
/// domains; the remaining lines are posted as constraints in order.
TextCsp parseCsp(std::string_view text, SolverConfig config = SolverConfig{});

/// Renders domains (`X in ...`) followed by the posted constraints.
std::string printCsp(const Csp& csp, const std::vector<std::string>& names);
std::string printLinExpr(const LinExpr& e, const std::vector<std::string>& names);

}  // namespace loopcount
