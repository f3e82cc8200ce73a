#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "loopcount/ast.hpp"
#include "loopcount/fd_solver.hpp"
#include "loopcount/flowcon.hpp"
#include "loopcount/interval_analysis.hpp"
#include "loopcount/loopbound.hpp"
#include "loopcount/looprec.hpp"
#include "loopcount/unparse.hpp"

namespace loopcount {

enum class AnalysisMode { Bounds, Constraints, Both };
const char* toString(AnalysisMode m);
/// Accepts "bounds", "constraints" and "both".
std::optional<AnalysisMode> parseAnalysisMode(std::string_view text);

struct DriverOptions {
  AnalysisMode mode = AnalysisMode::Both;
  IntervalOptions interval;
  SolverConfig solver = SolverConfig::fromEnvironment();

  bool runBounds() const { return mode != AnalysisMode::Constraints; }
  bool runConstraints() const { return mode != AnalysisMode::Bounds; }
};

struct LoopRecord {
  Label label;
  std::string function;
  SourceSpan span;
  int depth = 0;
  std::optional<Label> parent;
  std::optional<LoopDescriptor> descriptor;
  std::optional<Rejection> rejection;
  std::optional<BoundResult> loopbound;
  double loopboundMillis = 0;
  std::optional<FlowResult> flow;
  double flowMillis = 0;

  bool bounded() const { return loopbound && loopbound->isBound(); }
  bool constrained() const { return flow && flow->ok(); }
  /// Tightest iteration bound per loop entry from either analysis (a
  /// single-loop flow constraint is a loop bound).
  std::optional<Integer> bestBound() const;
};

struct FileReport {
  std::string path;
  std::string error;  // parse error message; empty on success
  std::shared_ptr<const Program> program;
  std::vector<LoopRecord> loops;
  double millis = 0;

  bool parsed() const { return error.empty(); }
  std::size_t boundedCount() const;
  std::size_t constrainedCount() const;
};

struct Totals {
  std::size_t loops = 0;
  std::size_t bounded = 0;
  std::size_t constrained = 0;
  double millis = 0;
  /// Percentages; nullopt when there are no loops.
  std::optional<double> boundedPct() const;
  std::optional<double> constrainedPct() const;
};

struct AnalysisReport {
  AnalysisMode mode = AnalysisMode::Both;
  std::vector<FileReport> files;

  Totals totals() const;
  std::size_t parseErrors() const;
  nlohmann::json toJson() const;
  /// One row per file plus a total row; "--" for percentages of files
  /// without loops.
  std::string toText() const;
};

/// parse -> interval analysis -> loop recognition -> loop bounds and flow
/// constraints. Parse errors are recorded in the report, not thrown.
FileReport analyzeSource(std::string_view source, const std::string& path,
                         const DriverOptions& options = {});
FileReport analyzeFile(const std::string& path, const DriverOptions& options = {});
AnalysisReport run(const std::vector<std::string>& files, const DriverOptions& options = {});

/// Annotation text per loop: `loop(L<label>)`, then `loopbound(<n>)` and
/// `flowconstraint(L<outermost>, <n>)` where available.
std::vector<Annotation> annotationsFor(const FileReport& file);
std::string annotatedSource(const FileReport& file);

}  // namespace loopcount
