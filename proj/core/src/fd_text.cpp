#include "loopcount/fd_text.hpp"

#include <cctype>
#include <optional>
#include <sstream>

namespace loopcount {

CspSyntaxError::CspSyntaxError(int line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

namespace {

struct Token {
  enum Kind { Ident, Int, Op, End } kind;
  std::string text;
};

std::vector<Token> tokenize(std::string_view line, int lineNo) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < line.size() && (std::isalnum(static_cast<unsigned char>(line[j])) || line[j] == '_')) ++j;
      out.push_back({Token::Ident, std::string(line.substr(i, j - i))});
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
      out.push_back({Token::Int, std::string(line.substr(i, j - i))});
      i = j;
    } else {
      static const char* two[] = {"<=", ">=", "=<", ".."};
      bool matched = false;
      for (const char* op : two) {
        if (line.substr(i, 2) == op) {
          out.push_back({Token::Op, op});
          i += 2;
          matched = true;
          break;
        }
      }
      if (matched) continue;
      if (std::string_view("=<>+-*()").find(c) == std::string_view::npos) {
        throw CspSyntaxError(lineNo, std::string("unexpected character '") + c + "'");
      }
      out.push_back({Token::Op, std::string(1, c)});
      ++i;
    }
  }
  out.push_back({Token::End, ""});
  return out;
}

class LineParser {
 public:
  LineParser(std::vector<Token> tokens, int lineNo, std::map<std::string, FdVarId>& ids,
             std::vector<std::string>& names)
      : tokens_(std::move(tokens)), line_(lineNo), ids_(ids), names_(names) {}

  bool isDomain() const {
    return tokens_.size() > 2 && tokens_[0].kind == Token::Ident && tokens_[1].text == "in";
  }

  /// Variable name and domain of an `X in ...` line.
  std::pair<FdVarId, FdDomain> domain() {
    FdVarId v = variable(next().text);
    next();  // in
    Bound lo = bound();
    expect("..");
    Bound hi = bound();
    Integer stride = 1;
    if (peek().text == "step") {
      next();
      stride = integer();
      if (stride < 1) fail("step must be positive");
    }
    expectEnd();
    Integer residue = lo.isFinite() ? lo.value() : Integer(0);
    return {v, FdDomain(lo, hi, stride, residue)};
  }

  Constraint constraint() {
    bool parenthesized = peek().text == "(";
    LinExpr lhs = expr();
    if (peek().text == "mod") {
      if (!parenthesized) fail("modulus expression must be parenthesized");
      next();
      Integer m = integer();
      expect("=");
      if (integer() != 0) fail("congruences must have the form (E) mod M = 0");
      expectEnd();
      if (m < 1) fail("modulus must be positive");
      return congruenceZero(lhs, m);
    }
    std::string rel = next().text;
    LinExpr rhs = expr();
    expectEnd();
    if (rel == "<=" || rel == "=<") return le(lhs, rhs);
    if (rel == ">=") return ge(lhs, rhs);
    if (rel == "=") return eq(lhs, rhs);
    if (rel == "<") return le(lhs, rhs - LinExpr(1));
    if (rel == ">") return ge(lhs, rhs + LinExpr(1));
    fail("expected a relation, got '" + rel + "'");
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() {
    const Token& t = tokens_[pos_];
    if (t.kind != Token::End) ++pos_;
    return t;
  }
  [[noreturn]] void fail(const std::string& msg) const { throw CspSyntaxError(line_, msg); }
  void expect(const std::string& text) {
    if (next().text != text) fail("expected '" + text + "'");
  }
  void expectEnd() {
    if (peek().kind != Token::End) fail("unexpected '" + peek().text + "'");
  }

  FdVarId variable(const std::string& name) {
    auto [it, inserted] = ids_.try_emplace(name, static_cast<FdVarId>(names_.size()));
    if (inserted) names_.push_back(name);
    return it->second;
  }

  Integer integer() {
    bool negative = false;
    if (peek().text == "-") {
      next();
      negative = true;
    }
    const Token& t = next();
    if (t.kind != Token::Int) fail("expected an integer");
    Integer v = parseInteger(t.text);
    return negative ? Integer(-v) : v;
  }

  Bound bound() {
    bool negative = peek().text == "-";
    if (negative || peek().text == "+") {
      if (tokens_[pos_ + 1].text == "inf") {
        next();
        next();
        return negative ? Bound::negInf() : Bound::posInf();
      }
    }
    if (peek().text == "inf") {
      next();
      return Bound::posInf();
    }
    return integer();
  }

  LinExpr expr() {
    LinExpr e = term();
    while (peek().text == "+" || peek().text == "-") {
      bool minus = next().text == "-";
      LinExpr t = term();
      if (minus) {
        e -= t;
      } else {
        e += t;
      }
    }
    return e;
  }

  LinExpr term() {
    LinExpr e = factor();
    while (peek().text == "*") {
      next();
      LinExpr f = factor();
      if (f.isConstant()) {
        e *= f.constant();
      } else if (e.isConstant()) {
        f *= e.constant();
        e = f;
      } else {
        fail("product of two variables is not linear");
      }
    }
    return e;
  }

  LinExpr factor() {
    const Token& t = next();
    if (t.text == "-") return -factor();
    if (t.text == "(") {
      LinExpr e = expr();
      expect(")");
      return e;
    }
    if (t.kind == Token::Int) return parseInteger(t.text);
    if (t.kind == Token::Ident && t.text != "mod" && t.text != "in") return LinExpr::var(variable(t.text));
    fail("unexpected '" + t.text + "'");
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  int line_;
  std::map<std::string, FdVarId>& ids_;
  std::vector<std::string>& names_;
};

}  // namespace

TextCsp parseCsp(std::string_view text, SolverConfig config) {
  std::map<std::string, FdVarId> ids;
  std::vector<std::string> names;
  std::map<FdVarId, FdDomain> domains;
  std::vector<Constraint> constraints;

  int lineNo = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++lineNo;
    if (auto pct = line.find('%'); pct != std::string_view::npos) line = line.substr(0, pct);
    auto tokens = tokenize(line, lineNo);
    if (tokens.size() == 1) continue;
    LineParser p(std::move(tokens), lineNo, ids, names);
    if (p.isDomain()) {
      auto [v, d] = p.domain();
      auto [it, inserted] = domains.try_emplace(v, d);
      if (!inserted) it->second = it->second.intersect(d);
    } else {
      constraints.push_back(p.constraint());
    }
  }

  TextCsp out{Csp(config), names, ids};
  for (std::size_t v = 0; v < names.size(); ++v) {
    auto it = domains.find(static_cast<FdVarId>(v));
    out.csp.newVar(it == domains.end() ? FdDomain::top() : it->second);
  }
  for (const auto& c : constraints) out.csp.post(c);
  return out;
}

std::string printLinExpr(const LinExpr& e, const std::vector<std::string>& names) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [coef, v] : e.terms()) {
    Integer mag = abs(coef);
    if (first) {
      if (coef < 0) os << "-";
    } else {
      os << (coef < 0 ? " - " : " + ");
    }
    if (mag != 1) os << mag << "*";
    os << names.at(v);
    first = false;
  }
  if (first) {
    os << e.constant();
  } else if (e.constant() != 0) {
    os << (e.constant() < 0 ? " - " : " + ") << abs(e.constant());
  }
  return os.str();
}

std::string printCsp(const Csp& csp, const std::vector<std::string>& names) {
  std::ostringstream os;
  for (std::size_t v = 0; v < csp.varCount(); ++v) {
    const FdDomain& d = csp.domain(static_cast<FdVarId>(v));
    const std::string& n = names.at(v);
    if (d.isEmpty()) {
      os << n << " in 1..0\n";
      continue;
    }
    if (d.lo().isNegInf() && d.hi().isPosInf() && d.stride() == 1) continue;
    os << n << " in " << d.lo().toString() << ".." << d.hi().toString();
    if (d.stride() > 1 && d.lo().isFinite()) os << " step " << d.stride();
    os << "\n";
    if (d.stride() > 1 && !d.lo().isFinite()) {
      os << "(" << n << " - " << d.residue() << ") mod " << d.stride() << " = 0\n";
    }
  }
  for (const auto& c : csp.constraints()) {
    if (const auto* x = std::get_if<LeConstraint>(&c)) {
      os << printLinExpr(x->lhs, names) << " <= " << printLinExpr(x->rhs, names);
    } else if (const auto* x = std::get_if<GeConstraint>(&c)) {
      os << printLinExpr(x->lhs, names) << " >= " << printLinExpr(x->rhs, names);
    } else if (const auto* x = std::get_if<EqConstraint>(&c)) {
      os << printLinExpr(x->lhs, names) << " = " << printLinExpr(x->rhs, names);
    } else {
      const auto& cz = std::get<CongruenceZero>(c);
      os << "(" << printLinExpr(cz.expr, names) << ") mod " << cz.modulus << " = 0";
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace loopcount
