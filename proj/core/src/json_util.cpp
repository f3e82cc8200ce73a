#include "loopcount/json_util.hpp"

#include <cstdint>
#include <limits>

namespace loopcount {

nlohmann::json integerToJson(const Integer& value) {
  if (value >= std::numeric_limits<std::int64_t>::min() &&
      value <= std::numeric_limits<std::int64_t>::max()) {
    return value.convert_to<std::int64_t>();
  }
  return toString(value);
}

nlohmann::json boundToJson(const Bound& bound) {
  if (bound.isFinite()) return integerToJson(bound.value());
  return bound.toString();
}

nlohmann::json spanToJson(const SourceSpan& span) {
  return {{"file", span.file}, {"line", span.line}, {"column", span.column},
          {"length", span.length}};
}

}  // namespace loopcount
