#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "loopcount/ast.hpp"

namespace loopcount {

class ParseError : public std::runtime_error {
 public:
  enum class Kind { Syntax, Unsupported, Semantic };

  ParseError(Kind kind, const std::string& message, SourceSpan span);

  Kind kind() const { return kind_; }
  const SourceSpan& span() const { return span_; }
  /// The message without the location prefix.
  const std::string& detail() const { return detail_; }

 private:
  Kind kind_;
  SourceSpan span_;
  std::string detail_;
};

/// Parses a translation unit of the C subset documented in docs/grammar.md.
/// Statements receive labels 1, 2, ... in pre-order; for-loops keep their
/// init / condition / step components as separately labelled parts.
Program parse(std::string_view text, const std::string& fileName = "<input>");

}  // namespace loopcount
