// Command line driver: analyze C-subset files or a seeded corpus and print
// loop bounds, flow constraints and coverage.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include <CLI11.hpp>

#include "loopcount/corpus.hpp"
#include "loopcount/report.hpp"

namespace {

enum ExitCode { kOk = 0, kParseErrors = 1, kInternal = 2 };

void writeJson(const nlohmann::json& j, const std::string& path) {
  if (path == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

int runCorpusMode(const std::string& dir, const loopcount::CorpusOptions& options,
                  const std::string& jsonPath) {
  using namespace loopcount;
  CorpusRun run = runCorpus(corpusFiles(dir), options);
  if (!jsonPath.empty()) writeJson(run.toJson(), jsonPath);
  if (jsonPath != "-") std::cout << run.report.toText();

  int code = run.report.parseErrors() ? kParseErrors : kOk;
  for (const auto& c : run.checks) {
    for (const auto& v : c.violations) {
      std::cerr << c.path << ": L" << v.loop.id << " ran " << toString(v.observed) << " iterations, "
                << v.kind << " allows " << toString(v.bound) << " x " << toString(v.entries) << " (seed "
                << v.seed << ")\n";
      code = kInternal;
    }
    for (Label l : c.subsetViolations) {
      std::cerr << c.path << ": L" << l.id << " has a flow constraint but no loop bound\n";
    }
    if (!c.withinTime) std::cerr << c.path << ": analysis exceeded the per-file time limit\n";
  }

  const auto golden = std::filesystem::path(dir) / "golden.json";
  if (std::filesystem::exists(golden)) {
    std::ifstream in(golden);
    for (const auto& r : coverageRegressions(parseGolden(nlohmann::json::parse(in)), run.coverage())) {
      std::cerr << "coverage regression: " << r << "\n";
    }
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace loopcount;
  CLI::App app{"Loop bound and flow constraint analysis for a C subset"};

  std::vector<std::string> files;
  std::string mode = "both";
  std::string jsonPath;
  std::string corpusDir;
  bool annotate = false;
  int solverBudget = 0;
  std::uint64_t enumCap = 0;
  int inlineDepth = -1;

  app.add_option("files", files, "Source files to analyze")->check(CLI::ExistingFile);
  app.add_option("--mode", mode, "bounds, constraints or both")
      ->check(CLI::IsMember({"bounds", "constraints", "both"}));
  app.add_option("--json", jsonPath, "Write the JSON report to this path ('-' for stdout)");
  app.add_flag("--annotate", annotate, "Print sources with loopcount pragmas");
  app.add_option("--corpus", corpusDir, "Analyze every *.c file in a directory and replay its seeds")
      ->check(CLI::ExistingDirectory);
  app.add_option("--solver-budget", solverBudget, "Propagator firings per propagation round")
      ->check(CLI::PositiveNumber);
  app.add_option("--enum-cap", enumCap, "Search nodes per counting call")->check(CLI::PositiveNumber);
  app.add_option("--inline-depth", inlineDepth, "Call inlining depth of the interval analysis")
      ->check(CLI::NonNegativeNumber);
  CLI11_PARSE(app, argc, argv);

  DriverOptions options;
  options.mode = *parseAnalysisMode(mode);
  if (solverBudget > 0) options.solver.propagationBudget = solverBudget;
  if (enumCap > 0) options.solver.enumerationCap = enumCap;
  if (inlineDepth >= 0) options.interval.inlineDepth = inlineDepth;

  if (files.empty() && corpusDir.empty()) {
    std::cerr << app.help();
    return kParseErrors;
  }

  try {
    if (!corpusDir.empty()) {
      CorpusOptions corpus;
      corpus.driver = options;
      return runCorpusMode(corpusDir, corpus, jsonPath);
    }
    AnalysisReport report = run(files, options);
    if (!jsonPath.empty()) writeJson(report.toJson(), jsonPath);
    if (annotate) {
      for (const auto& f : report.files) {
        if (!f.parsed()) continue;
        if (report.files.size() > 1) std::cout << "// ==> " << f.path << "\n";
        std::cout << annotatedSource(f);
      }
    } else if (jsonPath != "-") {
      std::cout << report.toText();
    }
    for (const auto& f : report.files) {
      if (!f.parsed()) std::cerr << f.error << "\n";
    }
    return report.parseErrors() ? kParseErrors : kOk;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}
