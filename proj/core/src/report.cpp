#include "loopcount/report.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "loopcount/json_util.hpp"
#include "loopcount/parser.hpp"
#include "loopcount/program_index.hpp"
#include "loopcount/unparse.hpp"

namespace loopcount {

const char* toString(AnalysisMode m) {
  switch (m) {
    case AnalysisMode::Bounds: return "bounds";
    case AnalysisMode::Constraints: return "constraints";
    case AnalysisMode::Both: return "both";
  }
  return "?";
}

std::optional<AnalysisMode> parseAnalysisMode(std::string_view text) {
  if (text == "bounds") return AnalysisMode::Bounds;
  if (text == "constraints") return AnalysisMode::Constraints;
  if (text == "both") return AnalysisMode::Both;
  return std::nullopt;
}

std::optional<Integer> LoopRecord::bestBound() const {
  std::optional<Integer> best;
  if (bounded()) best = loopbound->n();
  if (constrained() && flow->constraint.depth == 1) {
    if (!best || flow->constraint.n < *best) best = flow->constraint.n;
  }
  return best;
}

std::size_t FileReport::boundedCount() const {
  std::size_t n = 0;
  for (const auto& l : loops) n += l.bounded() ? 1 : 0;
  return n;
}

std::size_t FileReport::constrainedCount() const {
  std::size_t n = 0;
  for (const auto& l : loops) n += l.constrained() ? 1 : 0;
  return n;
}

namespace {

std::optional<double> percentage(std::size_t part, std::size_t whole) {
  if (whole == 0) return std::nullopt;
  return 100.0 * static_cast<double>(part) / static_cast<double>(whole);
}

nlohmann::json pctJson(std::optional<double> p) {
  return p ? nlohmann::json(*p) : nlohmann::json(nullptr);
}

std::string pctText(std::optional<double> p) {
  if (!p) return "--";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f%%", *p);
  return buf;
}

double millisSince(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

std::string loopName(Label l) { return "L" + toString(l); }

nlohmann::json totalsJson(const Totals& t) {
  return {{"loops", t.loops},
          {"bounded", t.bounded},
          {"constrained", t.constrained},
          {"bounded_pct", pctJson(t.boundedPct())},
          {"constrained_pct", pctJson(t.constrainedPct())},
          {"millis", t.millis}};
}

Totals fileTotals(const FileReport& f) {
  Totals t;
  t.loops = f.loops.size();
  t.bounded = f.boundedCount();
  t.constrained = f.constrainedCount();
  t.millis = f.millis;
  return t;
}

nlohmann::json loopJson(const LoopRecord& l) {
  nlohmann::json j = {{"label", l.label.id},
                      {"name", loopName(l.label)},
                      {"function", l.function},
                      {"span", spanToJson(l.span)},
                      {"depth", l.depth},
                      {"parent", l.parent ? nlohmann::json(l.parent->id) : nlohmann::json(nullptr)},
                      {"descriptor", l.descriptor ? toJson(*l.descriptor) : nlohmann::json(nullptr)},
                      {"rejection", l.rejection ? toJson(*l.rejection) : nlohmann::json(nullptr)},
                      {"loopbound", nullptr},
                      {"flowconstraint", nullptr}};
  if (l.loopbound) {
    j["loopbound"] = l.loopbound->toJson();
    j["loopbound"]["millis"] = l.loopboundMillis;
  }
  if (l.flow) {
    j["flowconstraint"] = l.flow->toJson();
    j["flowconstraint"]["millis"] = l.flowMillis;
  }
  return j;
}

}  // namespace

std::optional<double> Totals::boundedPct() const { return percentage(bounded, loops); }
std::optional<double> Totals::constrainedPct() const { return percentage(constrained, loops); }

Totals AnalysisReport::totals() const {
  Totals t;
  for (const auto& f : files) {
    Totals ft = fileTotals(f);
    t.loops += ft.loops;
    t.bounded += ft.bounded;
    t.constrained += ft.constrained;
    t.millis += ft.millis;
  }
  return t;
}

std::size_t AnalysisReport::parseErrors() const {
  std::size_t n = 0;
  for (const auto& f : files) n += f.parsed() ? 0 : 1;
  return n;
}

nlohmann::json AnalysisReport::toJson() const {
  nlohmann::json files_ = nlohmann::json::array();
  for (const auto& f : files) {
    nlohmann::json loops = nlohmann::json::array();
    for (const auto& l : f.loops) loops.push_back(loopJson(l));
    files_.push_back({{"path", f.path},
                      {"error", f.parsed() ? nlohmann::json(nullptr) : nlohmann::json(f.error)},
                      {"loops", loops},
                      {"totals", totalsJson(fileTotals(f))}});
  }
  return {{"mode", loopcount::toString(mode)}, {"files", files_}, {"totals", totalsJson(totals())}};
}

std::string AnalysisReport::toText() const {
  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof line, "%-28s %6s %8s %8s %10s %8s %10s\n", "file", "loops", "bounded",
                "pct", "constrained", "pct", "millis");
  os << line;
  auto row = [&](const std::string& name, const Totals& t) {
    std::snprintf(line, sizeof line, "%-28s %6zu %8zu %8s %10zu %8s %10.2f\n", name.c_str(), t.loops,
                  t.bounded, pctText(t.boundedPct()).c_str(), t.constrained,
                  pctText(t.constrainedPct()).c_str(), t.millis);
    os << line;
  };
  for (const auto& f : files) {
    std::string name = f.path;
    if (auto slash = name.find_last_of('/'); slash != std::string::npos) name = name.substr(slash + 1);
    if (!f.parsed()) {
      os << name << ": " << f.error << "\n";
      continue;
    }
    row(name, fileTotals(f));
  }
  row("total", totals());
  return os.str();
}

FileReport analyzeSource(std::string_view source, const std::string& path, const DriverOptions& options) {
  FileReport report;
  report.path = path;
  auto start = std::chrono::steady_clock::now();
  std::shared_ptr<Program> program;
  try {
    program = std::make_shared<Program>(parse(source, path));
  } catch (const ParseError& e) {
    report.error = e.what();
    report.millis = millisSince(start);
    return report;
  }
  report.program = program;
  ProgramIndex index(*program);
  IntervalResult itv = analyze(*program, options.interval);
  std::vector<LoopRecognition> loops = findLoops(*program, index, itv);
  for (const auto& rec : loops) {
    LoopRecord lr;
    lr.label = rec.loop->label;
    lr.function = rec.function;
    lr.span = rec.loop->span;
    lr.depth = rec.nestingDepth;
    lr.parent = rec.parent;
    if (const auto* r = rec.rejection()) lr.rejection = *r;
    if (const auto* d = rec.descriptor()) {
      lr.descriptor = *d;
      if (options.runBounds()) {
        auto t0 = std::chrono::steady_clock::now();
        lr.loopbound = loopBound(*d, index, itv);
        lr.loopboundMillis = millisSince(t0);
      }
      if (options.runConstraints()) {
        auto t0 = std::chrono::steady_clock::now();
        lr.flow = analyzeNest(nestOf(*d, loops), index, itv, options.solver).back();
        lr.flowMillis = millisSince(t0);
      }
    }
    report.loops.push_back(std::move(lr));
  }
  report.millis = millisSince(start);
  return report;
}

FileReport analyzeFile(const std::string& path, const DriverOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    FileReport r;
    r.path = path;
    r.error = path + ": cannot open file";
    return r;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return analyzeSource(ss.str(), path, options);
}

AnalysisReport run(const std::vector<std::string>& files, const DriverOptions& options) {
  AnalysisReport report;
  report.mode = options.mode;
  for (const auto& f : files) report.files.push_back(analyzeFile(f, options));
  return report;
}

std::vector<Annotation> annotationsFor(const FileReport& file) {
  std::vector<Annotation> out;
  for (const auto& l : file.loops) {
    out.emplace_back(l.label, "loop(" + loopName(l.label) + ")");
    if (auto n = l.bestBound()) out.emplace_back(l.label, "loopbound(" + toString(*n) + ")");
    if (l.constrained()) {
      out.emplace_back(l.label, "flowconstraint(" + loopName(l.flow->constraint.relativeTo) + ", " +
                                    toString(l.flow->constraint.n) + ")");
    }
  }
  return out;
}

std::string annotatedSource(const FileReport& file) {
  if (!file.program) return {};
  return unparse(*file.program, annotationsFor(file));
}

}  // namespace loopcount
