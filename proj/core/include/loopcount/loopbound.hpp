#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "loopcount/interval.hpp"
#include "loopcount/interval_analysis.hpp"
#include "loopcount/looprec.hpp"
#include "loopcount/program_index.hpp"
#include "loopcount/simplify.hpp"

namespace loopcount {

/// The iteration count is at most ceil((high - low + correction) / |step|).
struct LoopParams {
  ExprPtr lowExpr;
  ExprPtr highExpr;
  ExprPtr stepExpr;
  Integer correction = 0;
};

class BoundResult {
 public:
  enum class Kind { Bound, Unbounded, NotApplicable };

  static BoundResult bound(Integer n);
  static BoundResult unbounded(std::string reason = {});
  static BoundResult notApplicable(std::string reason);

  Kind kind() const { return kind_; }
  bool isBound() const { return kind_ == Kind::Bound; }
  /// Only meaningful for Kind::Bound.
  const Integer& n() const { return n_; }
  const std::string& reason() const { return reason_; }

  nlohmann::json toJson() const;

  friend bool operator==(const BoundResult&, const BoundResult&) = default;

 private:
  Kind kind_ = Kind::NotApplicable;
  Integer n_ = 0;
  std::string reason_;
};

const char* toString(BoundResult::Kind k);

/// Low/High per exit relation:
///   <  : (a, b)       <= : (a, b+1)
///   >  : (b, a)       >= : (b, a-1), correction 2
/// `step` is the signed increment c.
LoopParams deriveParams(Relation rel, const ExprPtr& a, const ExprPtr& b, const ExprPtr& c);
/// Uses the descriptor's normalized exit relation.
LoopParams deriveParams(const LoopDescriptor& d);

/// ((high - low) + correction) / |step| as an expression, |step| written as
/// -step when `down`.
ExprPtr boundExpression(const LoopParams& params, bool down);

/// Evaluates the simplified bound expression over `state`, rounding the
/// final division up. NotApplicable when a variable the result depends on
/// is completely unknown or the divisor may be zero.
BoundResult evaluateBound(const LoopParams& params, bool down, const AbstractState& state,
                          const InvarianceTest& isInvariant);

/// Bound on the number of iterations per entry into the loop. The minimum
/// over all accepted exit conditions is returned.
BoundResult loopBound(const LoopDescriptor& d, const ProgramIndex& index, const IntervalResult& itv);

}  // namespace loopcount
