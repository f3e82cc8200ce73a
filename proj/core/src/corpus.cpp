#include "loopcount/corpus.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <stdexcept>

#include "loopcount/json_util.hpp"
#include "loopcount/program_index.hpp"

namespace loopcount {

std::vector<Environment> parseSeeds(std::string_view source) {
  static const std::regex seedLine(R"(^\s*//\s*seed:(.*)$)");
  static const std::regex binding(R"(^\s*([A-Za-z_][A-Za-z0-9_]*)\s*=\s*(-?[0-9]+)\s*$)");
  std::vector<Environment> seeds;
  std::istringstream in{std::string(source)};
  std::string line;
  while (std::getline(in, line)) {
    std::smatch m;
    if (!std::regex_match(line, m, seedLine)) continue;
    Environment env;
    std::istringstream items(m[1].str());
    std::string item;
    while (std::getline(items, item, ',')) {
      if (item.find_first_not_of(" \t") == std::string::npos) continue;
      std::smatch b;
      if (!std::regex_match(item, b, binding)) {
        throw std::invalid_argument("malformed seed binding '" + item + "'");
      }
      env[b[1].str()] = parseInteger(b[2].str());
    }
    seeds.push_back(std::move(env));
  }
  return seeds;
}

std::vector<std::string> corpusFiles(const std::string& dir) {
  std::vector<std::string> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".c") files.push_back(entry.path().string());
  }
  std::sort(files.begin(), files.end());
  return files;
}

namespace {

std::string fileName(const std::string& path) { return std::filesystem::path(path).filename().string(); }

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Coverage coverageOf(const FileReport& f) {
  return {f.loops.size(), f.boundedCount(), f.constrainedCount()};
}

}  // namespace

FileCheck checkFile(const FileReport& file, std::string_view source, const CorpusOptions& options) {
  FileCheck check;
  check.path = file.path;
  check.withinTime = file.millis < options.fileTimeLimitMillis;
  for (const auto& l : file.loops) {
    if (l.constrained() && !l.bounded()) check.subsetViolations.push_back(l.label);
  }
  if (!file.program) return check;

  const std::vector<Environment> seeds = parseSeeds(source);
  check.seeds = seeds.size();
  ProgramIndex index(*file.program);
  InterpreterOptions run;
  run.fuel = options.fuel;
  for (std::size_t s = 0; s < seeds.size(); ++s) {
    ExecutionProfile profile = interpret(*file.program, seeds[s], run);
    if (!profile.terminated()) continue;
    ++check.terminatedRuns;
    for (const auto& l : file.loops) {
      const Integer body = profile.count(index.stmt(l.label)->as<Loop>()->body->label);
      auto verify = [&](const char* kind, const Integer& n, Label reference) {
        const Integer entries = profile.count(reference);
        if (body > n * entries) check.violations.push_back({l.label, kind, n, entries, body, s});
      };
      if (auto n = l.bestBound()) verify("loopbound", *n, l.label);
      if (l.constrained()) verify("flowconstraint", l.flow->constraint.n, l.flow->constraint.relativeTo);
    }
  }
  return check;
}

CorpusRun runCorpus(const std::vector<std::string>& files, const CorpusOptions& options) {
  CorpusRun out;
  out.report.mode = options.driver.mode;
  for (const auto& path : files) {
    std::string source = readFile(path);
    FileReport file = analyzeSource(source, path, options.driver);
    out.checks.push_back(checkFile(file, source, options));
    out.report.files.push_back(std::move(file));
  }
  return out;
}

bool CorpusRun::oracleHolds() const {
  return std::all_of(checks.begin(), checks.end(), [](const FileCheck& c) { return c.violations.empty(); });
}

bool CorpusRun::subsetHolds() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const FileCheck& c) { return c.subsetViolations.empty(); });
}

bool CorpusRun::timingHolds() const {
  return std::all_of(checks.begin(), checks.end(), [](const FileCheck& c) { return c.withinTime; });
}

GoldenTable CorpusRun::coverage() const {
  GoldenTable t;
  for (const auto& f : report.files) t[fileName(f.path)] = coverageOf(f);
  return t;
}

nlohmann::json CorpusRun::toJson() const {
  nlohmann::json j = report.toJson();
  nlohmann::json checks_ = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json violations = nlohmann::json::array();
    for (const auto& v : c.violations) {
      violations.push_back({{"loop", v.loop.id},
                            {"kind", v.kind},
                            {"bound", integerToJson(v.bound)},
                            {"entries", integerToJson(v.entries)},
                            {"observed", integerToJson(v.observed)},
                            {"seed", v.seed}});
    }
    nlohmann::json subset = nlohmann::json::array();
    for (Label l : c.subsetViolations) subset.push_back(l.id);
    checks_.push_back({{"path", c.path},
                       {"seeds", c.seeds},
                       {"terminated_runs", c.terminatedRuns},
                       {"violations", violations},
                       {"subset_violations", subset},
                       {"within_time", c.withinTime}});
  }
  j["oracle"] = checks_;
  j["subset_holds"] = subsetHolds();
  return j;
}

GoldenTable parseGolden(const nlohmann::json& j) {
  GoldenTable t;
  for (const auto& [name, entry] : j.at("files").items()) {
    t[name] = {entry.at("loops").get<std::size_t>(), entry.at("bounded").get<std::size_t>(),
               entry.at("constrained").get<std::size_t>()};
  }
  return t;
}

nlohmann::json goldenToJson(const GoldenTable& table) {
  nlohmann::json files = nlohmann::json::object();
  for (const auto& [name, c] : table) {
    files[name] = {{"loops", c.loops}, {"bounded", c.bounded}, {"constrained", c.constrained}};
  }
  return {{"files", files}};
}

std::vector<std::string> coverageRegressions(const GoldenTable& golden, const GoldenTable& current) {
  std::vector<std::string> out;
  for (const auto& [name, want] : golden) {
    auto it = current.find(name);
    if (it == current.end()) {
      out.push_back(name + ": missing from run");
      continue;
    }
    const Coverage& got = it->second;
    if (got.bounded < want.bounded) {
      out.push_back(name + ": bounded " + std::to_string(got.bounded) + " < " + std::to_string(want.bounded));
    }
    if (got.constrained < want.constrained) {
      out.push_back(name + ": constrained " + std::to_string(got.constrained) + " < " +
                    std::to_string(want.constrained));
    }
  }
  return out;
}

}  // namespace loopcount
