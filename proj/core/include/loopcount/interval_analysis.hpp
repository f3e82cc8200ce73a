#pragma once

#include <map>
#include <utility>

#include <nlohmann/json.hpp>

#include "loopcount/ast.hpp"
#include "loopcount/interval.hpp"

namespace loopcount {

enum class ProgramPoint { Before, After };

struct IntervalOptions {
  /// Calls are analysed by inlining the callee up to this depth; deeper
  /// calls set the callee's written globals and the result to top.
  int inlineDepth = 1;
};

/// Abstract states before and after every labelled statement. States of a
/// label reached in several contexts (loop iterations, inlined call sites)
/// are joined. A loop's condition label holds the stabilised loop-head state.
class IntervalResult {
 public:
  /// Bottom when the point was never reached.
  const AbstractState& at(Label label, ProgramPoint point) const;
  const AbstractState& before(Label label) const { return at(label, ProgramPoint::Before); }
  const AbstractState& after(Label label) const { return at(label, ProgramPoint::After); }

  void record(Label label, ProgramPoint point, const AbstractState& state);

  std::size_t size() const { return states_.size(); }
  const std::map<std::pair<Label, ProgramPoint>, AbstractState>& states() const { return states_; }

  /// [{label, point: "before"|"after", env: {var: [lo, hi]}}] with "-inf"/"+inf"
  /// sentinels; unreachable points carry "bottom": true.
  nlohmann::json toJson() const;

 private:
  std::map<std::pair<Label, ProgramPoint>, AbstractState> states_;
};

/// Edge selector for transfer().
enum class Edge { True, False, Fall };

/// Single-statement transfer function. Assignments, declarations and calls
/// use the `Fall` edge (calls are approximated without inlining); `If` and
/// `Loop` statements map the state through their condition on the True or
/// False edge.
AbstractState transfer(const Program& program, const Stmt& stmt, const AbstractState& state,
                       Edge edge);

/// Forward interval analysis of the whole program. The entry function
/// starts with globals at their initial values and parameters at top. A
/// function is also analysed from an all-top state when some call to it is
/// not inlined, or when no analysed code calls it.
IntervalResult analyze(const Program& program, const IntervalOptions& options = {});

}  // namespace loopcount
