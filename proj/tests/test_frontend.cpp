#include <catch_amalgamated.hpp>

#include <set>

#include "generators.hpp"
#include "loopcount/parser.hpp"
#include "loopcount/unparse.hpp"

using namespace loopcount;

namespace {

const Stmt& firstStmt(const Program& p) { return *p.functions.at(0).body->as<Block>()->stmts.at(0); }

std::vector<Label> allLabels(const Program& p) {
  std::vector<Label> out;
  forEachStmt(p, [&](const Stmt& s) { out.push_back(s.label); });
  return out;
}

}  // namespace

TEST_CASE("for header keeps init, condition and step as labelled parts", "[frontend]") {
  Program p = parse("void f() { int i; for (i = 0; i < 10; ++i) ; }");
  const Stmt& loopStmt = *p.functions[0].body->as<Block>()->stmts[1];
  const Loop* loop = loopStmt.as<Loop>();
  REQUIRE(loop);
  CHECK(loop->kind == LoopKind::For);

  const Assign* init = loop->init->as<Assign>();
  REQUIRE(init);
  CHECK(init->target == "i");
  CHECK(init->value->as<IntLit>()->value == 0);

  const Binary* cond = loop->cond->as<Binary>();
  REQUIRE(cond);
  CHECK(cond->op == BinaryOp::Lt);
  CHECK(cond->rhs->as<IntLit>()->value == 10);

  const Assign* step = loop->step->as<Assign>();
  REQUIRE(step);
  CHECK(unparseExpr(*step->value) == "i + 1");

  std::set<int> ids = {loopStmt.label.id, loop->init->label.id, loop->condLabel.id, loop->step->label.id};
  CHECK(ids.size() == 4);
}

TEST_CASE("empty translation unit has no functions", "[frontend]") {
  Program p = parse("");
  CHECK(p.functions.empty());
  CHECK(p.globals.empty());
  CHECK(p.entry() == nullptr);
}

TEST_CASE("compound assignment desugars to a plain assignment", "[frontend]") {
  Program p = parse("int f() { int j; j -= 2; return j; }");
  const Stmt& s = *p.functions[0].body->as<Block>()->stmts[1];
  const Assign* a = s.as<Assign>();
  REQUIRE(a);
  CHECK(a->target == "j");
  CHECK(unparseExpr(*a->value) == "j - 2");
}

TEST_CASE("increments and decrements desugar in both positions", "[frontend]") {
  Program p = parse("void f() { int x; x++; --x; x += 3; }");
  const auto& stmts = p.functions[0].body->as<Block>()->stmts;
  CHECK(unparseExpr(*stmts[1]->as<Assign>()->value) == "x + 1");
  CHECK(unparseExpr(*stmts[2]->as<Assign>()->value) == "x - 1");
  CHECK(unparseExpr(*stmts[3]->as<Assign>()->value) == "x + 3");
}

TEST_CASE("spans point at the source", "[frontend]") {
  Program p = parse("int main() {\n  int x = 1;\n  return x;\n}\n", "s.c");
  const Stmt& decl = firstStmt(p);
  CHECK(decl.span.file == "s.c");
  CHECK(decl.span.line == 2);
  CHECK(decl.span.column >= 1);
}

TEST_CASE("syntax and unsupported constructs are reported with a span", "[frontend]") {
  auto kindOf = [](const char* src) {
    try {
      parse(src);
    } catch (const ParseError& e) {
      CHECK(e.span().line >= 1);
      return e.kind();
    }
    FAIL("no error for: " << src);
    return ParseError::Kind::Syntax;
  };
  CHECK(kindOf("int main() { x = ; }") == ParseError::Kind::Syntax);
  CHECK(kindOf("int main() { int i; for (i = 0; i < 3; i++) { continue; } }") == ParseError::Kind::Unsupported);
  CHECK(kindOf("int main() { float x; }") == ParseError::Kind::Unsupported);
  CHECK(kindOf("int main() { int x; x = (x = 1) + 2; }") == ParseError::Kind::Unsupported);
  CHECK(kindOf("int g() { return 1; } int main() { int x; x = g() + 1; }") == ParseError::Kind::Unsupported);
  CHECK(kindOf("int main() { y = 1; }") == ParseError::Kind::Semantic);
  CHECK(kindOf("int main() { break; }") == ParseError::Kind::Semantic);
  CHECK(kindOf("#include <stdio.h>\nint main() { }") == ParseError::Kind::Unsupported);
}

TEST_CASE("labels are unique", "[frontend]") {
  Program p = parse(R"(
    int g = 3;
    int f(int a) { if (a > 0) { return a; } else { return -a; } }
    int main() {
      int i; int j; int s = 0;
      for (i = 0; i < 4; i++) { for (j = 0; j < i; j++) { s = s + 1; } }
      while (s > 0) { s = s - 1; if (s == 2) break; }
      s = f(s);
      return s;
    })");
  auto labels = allLabels(p);
  std::set<Label> unique(labels.begin(), labels.end());
  CHECK(unique.size() == labels.size());
}

TEST_CASE("unparse round-trips to the same tree", "[frontend]") {
  const char* src = R"(
    int g;
    int arr[4];
    int f(int a, int *p) { arr[a % 4] = a; return arr[0] + g; }
    int main(int n) {
      int i; int x = -n; int *q;
      q = &x;
      for (i = 10; i >= 1; i -= 2) { if (!(i % 3 == 0) && i != 4 || x < 0) x = x * 2; else ; }
      while (1) { x = f(x, &g); break; }
      return (x + 1) * (2 - i) / 3;
    })";
  Program p = parse(src);
  Program again = parse(unparse(p));
  CHECK(equalModuloSpans(p, again));
}

TEST_CASE("random programs round-trip through unparse", "[frontend]") {
  testing::Rng rng(99);
  for (int k = 0; k < 200; ++k) {
    std::string src = k % 2 ? testing::randomProgram(rng).source : testing::randomNest(rng, k % 3 == 0).program.source;
    Program p = parse(src);
    Program again = parse(unparse(p));
    INFO(src);
    REQUIRE(equalModuloSpans(p, again));
  }
}

TEST_CASE("annotations precede the labelled statement", "[frontend]") {
  Program p = parse("int main() { int i; for (i = 0; i < 10; i++) ; return 0; }");
  Label loop = p.functions[0].body->as<Block>()->stmts[1]->label;
  std::string out = unparse(p, {{loop, "loopbound(10)"}});
  auto pragma = out.find("// #pragma loopcount loopbound(10)\n");
  auto forPos = out.find("for (");
  REQUIRE(pragma != std::string::npos);
  CHECK(pragma < forPos);
  CHECK(out.find('\n', pragma) < forPos);
  CHECK(equalModuloSpans(p, parse(out)));
}

TEST_CASE("unknown annotation label is an error", "[frontend]") {
  Program p = parse("int main() { return 0; }");
  CHECK_THROWS_AS(unparse(p, {{Label{999}, "x"}}), std::invalid_argument);
}

TEST_CASE("literals keep arbitrary precision", "[frontend]") {
  Program p = parse("int main() { int x; x = 123456789012345678901234567890; return x; }");
  const Assign* a = p.functions[0].body->as<Block>()->stmts[1]->as<Assign>();
  CHECK(toString(a->value->as<IntLit>()->value) == "123456789012345678901234567890");
}
