#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "loopcount/interpreter.hpp"
#include "loopcount/report.hpp"

namespace loopcount {

/// Oracle inputs from `// seed: n=5, m=-3` lines, one environment per line.
/// Throws std::invalid_argument on a malformed seed line.
std::vector<Environment> parseSeeds(std::string_view source);

/// Sorted paths of the `*.c` files directly inside `dir`.
std::vector<std::string> corpusFiles(const std::string& dir);

/// A seeded run that executed a loop more often than its reported bound.
struct OracleViolation {
  Label loop;
  std::string kind;  // "loopbound" or "flowconstraint"
  Integer bound;      // allowed iterations per entry of the reference loop
  Integer entries;    // entries of the reference loop
  Integer observed;   // executions of the loop body
  std::size_t seed = 0;
};

struct FileCheck {
  std::string path;
  std::size_t seeds = 0;
  std::size_t terminatedRuns = 0;
  std::vector<OracleViolation> violations;
  /// Loops with a flow constraint but no loop bound.
  std::vector<Label> subsetViolations;
  bool withinTime = true;
};

/// Per-file loop and coverage counts as stored in a golden file.
struct Coverage {
  std::size_t loops = 0;
  std::size_t bounded = 0;
  std::size_t constrained = 0;
  bool operator==(const Coverage&) const = default;
};
using GoldenTable = std::map<std::string, Coverage>;  // keyed by file name

struct CorpusRun {
  AnalysisReport report;
  std::vector<FileCheck> checks;

  bool oracleHolds() const;
  bool subsetHolds() const;
  bool timingHolds() const;
  GoldenTable coverage() const;
  nlohmann::json toJson() const;
};

struct CorpusOptions {
  DriverOptions driver;
  double fileTimeLimitMillis = 1000;
  std::uint64_t fuel = 5'000'000;
};

/// Analyzes every corpus file and replays its seeds through the interpreter,
/// checking reported bounds against the observed execution counts.
CorpusRun runCorpus(const std::vector<std::string>& files, const CorpusOptions& options = {});
FileCheck checkFile(const FileReport& file, std::string_view source, const CorpusOptions& options);

GoldenTable parseGolden(const nlohmann::json& j);
nlohmann::json goldenToJson(const GoldenTable& table);
/// Files of `golden` whose bounded or constrained count dropped in `current`,
/// or which are missing from it, one message each.
std::vector<std::string> coverageRegressions(const GoldenTable& golden, const GoldenTable& current);

}  // namespace loopcount
