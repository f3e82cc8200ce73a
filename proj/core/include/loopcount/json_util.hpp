#pragma once

#include <nlohmann/json.hpp>

#include "loopcount/ast.hpp"
#include "loopcount/bound.hpp"
#include "loopcount/integer.hpp"

namespace loopcount {

/// JSON number when the value fits in 64 bits, decimal string otherwise.
nlohmann::json integerToJson(const Integer& value);
/// Finite bounds as integers; infinities as "-inf" / "+inf".
nlohmann::json boundToJson(const Bound& bound);
nlohmann::json spanToJson(const SourceSpan& span);

}  // namespace loopcount
