#pragma once

#include <functional>

#include "loopcount/ast.hpp"

namespace loopcount {

/// Decides whether an expression's value is the same everywhere it is
/// evaluated (used to cancel `x - x`).
using InvarianceTest = std::function<bool(const Expr&)>;

/// Algebraic rewriting to a fixpoint: constant folding of + - * and exact /,
/// neutral and absorbing elements, double negation, distribution of unary
/// minus and literal factors over sums, cancellation of equal invariant
/// terms, and exact division of a sum by a literal. The result evaluates to
/// the same value as `e` wherever `e` is defined. Intervals are not consulted.
ExprPtr simplify(const ExprPtr& e, const InvarianceTest& isInvariant);

}  // namespace loopcount
