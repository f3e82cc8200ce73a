#pragma once

#include <string>
#include <utility>
#include <vector>

#include "loopcount/ast.hpp"

namespace loopcount {

/// Prefix of every emitted annotation line.
inline constexpr const char* kPragmaPrefix = "// #pragma loopcount ";

using Annotation = std::pair<Label, std::string>;

/// Renders `program` as source text that re-parses to the same AST (up to
/// spans). Each annotation becomes a `// #pragma loopcount <text>` line
/// immediately above its labelled statement; annotations on for-loop header
/// parts attach to the loop. Throws std::invalid_argument for unknown labels.
std::string unparse(const Program& program, const std::vector<Annotation>& annotations = {});

std::string unparseExpr(const Expr& expr);

}  // namespace loopcount
