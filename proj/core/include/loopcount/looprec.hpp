#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "loopcount/ast.hpp"
#include "loopcount/interval.hpp"
#include "loopcount/interval_analysis.hpp"
#include "loopcount/program_index.hpp"

namespace loopcount {

/// Constant implies LoopInvariant.
enum class ValueClass { Constant, LoopInvariant, Variable };
const char* toString(ValueClass c);
bool isLoopInvariant(ValueClass c);

enum class Direction { Up, Down };
const char* toString(Direction d);

/// An iteration-variable based loop: `iterVar` is set to `initExpr` (a) at
/// l1, compared against `boundExpr` (b) at l2 and advanced by `stepExpr` (c)
/// at l3. `normRel`/`normBound` hold the exit condition rewritten to <= or >=.
struct LoopDescriptor {
  Label loopLabel;
  std::string function;
  std::string iterVar;

  Label initLabel;
  ExprPtr initExpr;
  bool initInHeader = false;  // the for-loop's own init statement

  Label condLabel;
  Relation rel = Relation::Lt;
  ExprPtr boundExpr;

  Label stepLabel;
  ExprPtr stepExpr;  // signed increment: `i -= 2` gives -2
  bool stepInHeader = false;

  Direction direction = Direction::Up;
  ValueClass initClass = ValueClass::Variable;
  ValueClass boundClass = ValueClass::Variable;
  ValueClass stepClass = ValueClass::Variable;
  Interval initRange;   // iterVar right after l1
  Interval boundRange;  // b at the loop head
  Interval stepRange;   // c before l3

  Relation normRel = Relation::Le;
  ExprPtr normBound;

  int nestingDepth = 0;
  std::optional<Label> parent;

  /// Further exit conditions that pass every check on their own.
  std::vector<LoopDescriptor> alternatives;
};

enum class RejectReason { NotIterationVariableBased, C1, C2, C3, C4 };
const char* toString(RejectReason r);

struct Rejection {
  Label loopLabel;
  RejectReason reason = RejectReason::NotIterationVariableBased;
  std::string detail;
  SourceSpan span;
};

struct LoopRecognition {
  const Stmt* loop = nullptr;
  std::string function;
  int nestingDepth = 0;
  std::optional<Label> parent;
  std::variant<LoopDescriptor, Rejection> outcome;

  const LoopDescriptor* descriptor() const { return std::get_if<LoopDescriptor>(&outcome); }
  const Rejection* rejection() const { return std::get_if<Rejection>(&outcome); }
};

/// One entry per syntactic loop, outer loops before inner ones.
std::vector<LoopRecognition> findLoops(const Program& program, const ProgramIndex& index,
                                       const IntervalResult& itv);
std::vector<LoopRecognition> findLoops(const Program& program, const IntervalResult& itv);

/// Conditions C1 (no other write to the iteration variable inside the loop),
/// C2 (its address is never taken within its scope), C3 (unambiguous
/// direction) and C4 (the exit relation normalizes to <= or >=), first
/// failure reported. On success returns the descriptor with its normalized
/// exit condition filled in.
std::variant<LoopDescriptor, Rejection> checkSafety(const LoopDescriptor& d,
                                                    const ProgramIndex& index,
                                                    const IntervalResult& itv);

/// < becomes <= b-1, > becomes >= b+1. == and != are accepted only when a, b
/// and c are constants with (b - a) divisible by c; != then becomes <= b-1
/// (up) or >= b+1 (down) and == becomes <= b or >= b.
std::variant<LoopDescriptor, Rejection> normalizeRel(const LoopDescriptor& d);

/// Value class of `e` relative to `loop` (a Loop statement).
ValueClass classify(const Expr& e, const Stmt& loop, const ProgramIndex& index,
                    const IntervalResult& itv);

/// State in which loop-entry values are read: after the for-init if present,
/// otherwise before the loop statement.
const AbstractState& loopEntryState(const Stmt& loop, const IntervalResult& itv);

nlohmann::json toJson(const LoopDescriptor& d);
nlohmann::json toJson(const Rejection& r);

}  // namespace loopcount
