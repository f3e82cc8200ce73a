#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "loopcount/fd_solver.hpp"
#include "loopcount/interval_analysis.hpp"
#include "loopcount/loopbound.hpp"
#include "loopcount/looprec.hpp"
#include "loopcount/program_index.hpp"

namespace loopcount {

/// The body of `loopLabel` executes at most `n` times per execution of the
/// loop statement `relativeTo` (the outermost loop of the analysed nest).
struct FlowConstraint {
  Label loopLabel;
  Integer n = 0;
  Label relativeTo;
  int depth = 1;
  /// False when an interval endpoint, a non-constant step or the stride
  /// overestimation replaced part of the exact iteration space.
  bool exact = true;
};

/// Constraints contributed by one loop of a nest.
struct LevelConstraints {
  Label loopLabel;
  FdVarId var = 0;
  std::vector<Constraint> bounds;         // I >= a, I <= b (or mirrored)
  std::optional<Constraint> congruence;   // (I - a) mod |c| = 0
  bool exact = true;
};

/// Stride |c| > 1 with an inexact start value: the congruence would be
/// anchored at the wrong residue, so it is dropped and the level marked
/// inexact.
void applyStrideOverestimation(LevelConstraints& level);

/// Constraint system for a chain of nested loops, outermost first.
struct NestTranslation {
  Csp csp;
  std::vector<std::string> names;         // indexed by FdVarId
  std::map<std::string, FdVarId> varMap;  // iteration variable -> FD variable
  std::vector<LevelConstraints> levels;
};

struct NestRejection {
  Label loopLabel;
  std::string detail;
};

struct FlowResult {
  enum class Status { Ok, Rejected, Unbounded, BudgetExceeded };
  Status status = Status::Rejected;
  FlowConstraint constraint;  // meaningful when Ok; loopLabel/relativeTo/depth always set
  std::string reason;
  std::uint64_t nodes = 0;

  bool ok() const { return status == Status::Ok; }
  nlohmann::json toJson() const;
};

const char* toString(FlowResult::Status s);

/// Per loop, up direction:   I >= a, I <= b, (I - a) mod c = 0
///           down direction: I <= a, I >= b, (I - a) mod |c| = 0
/// with b the normalized bound. Outer iteration variables become FD
/// variables; other variables are replaced by the interval endpoint that
/// enlarges the iteration space.
std::variant<NestTranslation, NestRejection> translateNest(
    const std::vector<const LoopDescriptor*>& nest, const ProgramIndex& index,
    const IntervalResult& itv, const SolverConfig& config = SolverConfig{});

/// One result per depth k = 1..nest.size(): the number of solutions over
/// the first k iteration variables with only the first k loops' constraints.
std::vector<FlowResult> analyzeNest(const std::vector<const LoopDescriptor*>& nest,
                                    const ProgramIndex& index, const IntervalResult& itv,
                                    const SolverConfig& config = SolverConfig{});

/// Single-loop nest as a loop bound.
BoundResult degenerateToLoopBound(const LoopDescriptor& loop, const ProgramIndex& index,
                                  const IntervalResult& itv,
                                  const SolverConfig& config = SolverConfig{});

/// Chain of accepted loops ending at `loop`: its ancestors up to (not
/// including) the first rejected or missing one.
std::vector<const LoopDescriptor*> nestOf(const LoopDescriptor& loop,
                                          const std::vector<LoopRecognition>& loops);

}  // namespace loopcount
