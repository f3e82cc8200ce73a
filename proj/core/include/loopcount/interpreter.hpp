#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>

#include "loopcount/ast.hpp"

namespace loopcount {

using Environment = std::map<std::string, Integer>;

/// Called before every statement and before every evaluation of a loop
/// condition (with the loop's condition label).
using Observer =
    std::function<void(Label label, const Environment& locals, const Environment& globals)>;

struct InterpreterOptions {
  /// One unit per executed statement and per loop-condition test.
  std::uint64_t fuel = 1'000'000;
  int maxCallDepth = 1000;
  Observer observer;
};

/// Statement execution counts of one concrete run. A loop's own label counts
/// entries into the loop, its condition label counts tests, and its body
/// label counts iterations.
struct ExecutionProfile {
  enum class Outcome { Completed, FuelExhausted, DivisionByZero, CallDepthExceeded };

  std::map<Label, Integer> counts;
  std::uint64_t fuelUsed = 0;
  Outcome outcome = Outcome::Completed;
  std::string detail;
  std::optional<Integer> returnValue;

  /// Counts are only complete when the run finished normally.
  bool terminated() const { return outcome == Outcome::Completed; }
  Integer count(Label label) const;
};

const char* toString(ExecutionProfile::Outcome o);

/// Runs the entry function. `inputs` bind entry parameters and may override
/// globals' initial values; unbound parameters and uninitialized variables
/// are 0. Division uses C semantics (truncation) over unbounded integers.
/// `&x` yields an opaque per-variable constant.
ExecutionProfile interpret(const Program& program, const Environment& inputs,
                           const InterpreterOptions& options = {});

}  // namespace loopcount
