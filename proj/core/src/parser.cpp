#include "loopcount/parser.hpp"

#include <cctype>
#include <map>
#include <set>
#include <unordered_set>
#include <vector>

namespace loopcount {

ParseError::ParseError(Kind kind, const std::string& message, SourceSpan span)
    : std::runtime_error(span.file + ":" + std::to_string(span.line) + ":" +
                         std::to_string(span.column) + ": " +
                         (kind == Kind::Syntax        ? "syntax error: "
                          : kind == Kind::Unsupported ? "unsupported construct: "
                                                      : "error: ") +
                         message),
      kind_(kind),
      span_(std::move(span)),
      detail_(message) {}

namespace {

enum class TokKind { Ident, Number, Punct, End };

struct Token {
  TokKind kind;
  std::string text;
  SourceSpan span;
};

const std::unordered_set<std::string> kUnsupportedKeywords = {
    "float",  "double", "char",   "long",     "short",    "unsigned", "signed",
    "struct", "union",  "enum",   "typedef",  "goto",     "do",       "switch",
    "case",   "default", "continue", "sizeof", "static",  "const",    "volatile",
    "extern", "auto",   "register", "inline", "bool",     "_Bool"};

const std::unordered_set<std::string> kKeywords = {"int",   "void",  "if",    "else",
                                                   "while", "for",   "return", "break"};

class Lexer {
 public:
  Lexer(std::string_view text, std::string file) : text_(text), file_(std::move(file)) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skipTrivia();
      if (pos_ >= text_.size()) {
        out.push_back({TokKind::End, "", spanHere(0)});
        return out;
      }
      char c = text_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t start = pos_;
        SourceSpan span = spanHere(0);
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
          advance();
        }
        span.length = static_cast<int>(pos_ - start);
        out.push_back({TokKind::Ident, std::string(text_.substr(start, pos_ - start)), span});
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t start = pos_;
        SourceSpan span = spanHere(0);
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          advance();
        }
        if (pos_ < text_.size() &&
            (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.' ||
             text_[pos_] == '_')) {
          span.length = static_cast<int>(pos_ - start + 1);
          throw ParseError(ParseError::Kind::Unsupported,
                           "only plain decimal integer literals are supported", span);
        }
        span.length = static_cast<int>(pos_ - start);
        out.push_back({TokKind::Number, std::string(text_.substr(start, pos_ - start)), span});
      } else {
        out.push_back(punct());
      }
    }
  }

 private:
  SourceSpan spanHere(int length) const { return SourceSpan{file_, line_, column_, length}; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skipTrivia() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '*') {
        SourceSpan start = spanHere(2);
        advance();
        advance();
        while (pos_ + 1 < text_.size() && !(text_[pos_] == '*' && text_[pos_ + 1] == '/')) {
          advance();
        }
        if (pos_ + 1 >= text_.size()) {
          throw ParseError(ParseError::Kind::Syntax, "unterminated comment", start);
        }
        advance();
        advance();
      } else if (c == '#') {
        throw ParseError(ParseError::Kind::Unsupported, "preprocessor directives", spanHere(1));
      } else {
        return;
      }
    }
  }

  Token punct() {
    static const char* kTwoChar[] = {"<=", ">=", "==", "!=", "&&", "||", "++",
                                     "--", "+=", "-=", "*=", "/=", "%=", "->"};
    SourceSpan span = spanHere(2);
    if (pos_ + 1 < text_.size()) {
      std::string two(text_.substr(pos_, 2));
      for (const char* p : kTwoChar) {
        if (two == p) {
          advance();
          advance();
          return {TokKind::Punct, two, span};
        }
      }
    }
    span.length = 1;
    char c = text_[pos_];
    static const std::string kSingle = "(){}[];,=+-*/%<>!&";
    if (kSingle.find(c) == std::string::npos) {
      throw ParseError(ParseError::Kind::Syntax, std::string("unexpected character '") + c + "'",
                       span);
    }
    advance();
    return {TokKind::Punct, std::string(1, c), span};
  }

  std::string_view text_;
  std::string file_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

SourceSpan cover(const SourceSpan& from, const SourceSpan& to) {
  SourceSpan s = from;
  if (to.line == from.line && to.column >= from.column) {
    s.length = to.column + to.length - from.column;
  }
  return s;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Program run() {
    Program program;
    while (!atEnd()) {
      const Token& t = peek();
      if (t.kind != TokKind::Ident) syntax("expected a declaration or function definition");
      checkSupportedKeyword(t);
      if (t.text != "int" && t.text != "void") {
        syntax("expected 'int' or 'void' at top level");
      }
      // int name ( ... → function, otherwise a global declaration.
      bool isFunction = peek(1).kind == TokKind::Ident && peek(2).text == "(";
      if (isFunction) {
        program.functions.push_back(function());
      } else {
        if (t.text == "void") syntax("void variables are not allowed");
        auto decls = declaration();
        for (auto& d : decls) program.globals.push_back(std::move(d));
      }
    }
    return program;
  }

 private:
  // ---- token helpers -------------------------------------------------------
  const Token& peek(std::size_t k = 0) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  bool atEnd() const { return peek().kind == TokKind::End; }
  bool check(std::string_view text) const {
    return peek().kind != TokKind::End && peek().kind != TokKind::Number && peek().text == text;
  }
  bool accept(std::string_view text) {
    if (check(text)) {
      ++pos_;
      return true;
    }
    return false;
  }
  const Token& next() {
    const Token& t = peek();
    if (!atEnd()) ++pos_;
    return t;
  }
  const Token& expect(std::string_view text) {
    if (!check(text)) syntax("expected '" + std::string(text) + "'");
    return next();
  }
  std::string identifier(const char* what) {
    const Token& t = peek();
    if (t.kind != TokKind::Ident) syntax(std::string("expected ") + what);
    checkSupportedKeyword(t);
    if (kKeywords.count(t.text)) syntax(std::string("expected ") + what + ", found keyword");
    return next().text;
  }

  [[noreturn]] void syntax(const std::string& msg) const {
    const Token& t = peek();
    std::string found = t.kind == TokKind::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(ParseError::Kind::Syntax, msg + " (found " + found + ")", t.span);
  }
  [[noreturn]] void unsupported(const std::string& msg, const SourceSpan& span) const {
    throw ParseError(ParseError::Kind::Unsupported, msg, span);
  }
  void checkSupportedKeyword(const Token& t) const {
    if (t.kind == TokKind::Ident && kUnsupportedKeywords.count(t.text)) {
      unsupported("'" + t.text + "'", t.span);
    }
  }

  Label newLabel() { return Label{nextLabel_++}; }

  static StmtPtr makeStmt(auto node, Label label, SourceSpan span) {
    return std::make_shared<const Stmt>(Stmt{std::move(node), label, std::move(span)});
  }

  // ---- top level -----------------------------------------------------------
  Function function() {
    Function fn;
    fn.span = peek().span;
    fn.returnsInt = next().text == "int";
    fn.name = identifier("function name");
    expect("(");
    if (!check(")")) {
      if (check("void") && peek(1).text == ")") {
        next();
      } else {
        do {
          const Token& ty = peek();
          checkSupportedKeyword(ty);
          if (ty.text != "int") syntax("expected parameter type 'int'");
          next();
          Param p;
          p.pointer = accept("*");
          p.name = identifier("parameter name");
          if (check("[")) unsupported("array parameters", peek().span);
          fn.params.push_back(std::move(p));
        } while (accept(","));
      }
    }
    expect(")");
    if (!check("{")) syntax("expected function body");
    fn.body = block();
    return fn;
  }

  /// `int a, *p, b[10], c = e;`: one Decl statement per declarator.
  std::vector<StmtPtr> declaration() {
    expect("int");
    std::vector<StmtPtr> out;
    do {
      out.push_back(declarator());
    } while (accept(","));
    expect(";");
    return out;
  }

  StmtPtr declarator() {
    Label label = newLabel();
    SourceSpan span = peek().span;
    Decl d;
    d.pointer = accept("*");
    d.name = identifier("variable name");
    if (accept("[")) {
      const Token& n = peek();
      if (n.kind != TokKind::Number) syntax("expected array size");
      next();
      d.arraySize = parseInteger(n.text);
      if (*d.arraySize <= 0) {
        throw ParseError(ParseError::Kind::Semantic, "array size must be positive", n.span);
      }
      expect("]");
      if (d.pointer) unsupported("arrays of pointers", span);
    }
    if (accept("=")) {
      if (d.arraySize) unsupported("array initializers", peek().span);
      if (check("{")) unsupported("aggregate initializers", peek().span);
      d.init = expression();
    }
    return makeStmt(std::move(d), label, span);
  }

  // ---- statements ----------------------------------------------------------
  StmtPtr block() {
    Label label = newLabel();
    SourceSpan span = expect("{").span;
    Block b;
    while (!check("}")) {
      if (atEnd()) syntax("expected '}'");
      if (check("int")) {
        auto decls = declaration();
        for (auto& d : decls) b.stmts.push_back(std::move(d));
      } else {
        b.stmts.push_back(statement());
      }
    }
    expect("}");
    return makeStmt(std::move(b), label, span);
  }

  StmtPtr statement() {
    const Token& t = peek();
    checkSupportedKeyword(t);
    if (check("{")) return block();
    if (check("if")) return ifStatement();
    if (check("while")) return whileStatement();
    if (check("for")) return forStatement();
    if (check("int")) {
      throw ParseError(ParseError::Kind::Syntax, "declaration is not allowed here", t.span);
    }
    if (check("return")) {
      Label label = newLabel();
      SourceSpan span = next().span;
      Return r;
      if (!check(";")) r.value = expression();
      expect(";");
      return makeStmt(std::move(r), label, span);
    }
    if (check("break")) {
      Label label = newLabel();
      SourceSpan span = next().span;
      expect(";");
      return makeStmt(Break{}, label, span);
    }
    if (check(";")) {
      Label label = newLabel();
      SourceSpan span = next().span;
      return makeStmt(Empty{}, label, span);
    }
    StmtPtr s = simpleStatement();
    expect(";");
    return s;
  }

  StmtPtr ifStatement() {
    Label label = newLabel();
    SourceSpan span = expect("if").span;
    expect("(");
    If node;
    node.cond = expression();
    expect(")");
    node.then = statement();
    if (accept("else")) node.otherwise = statement();
    return makeStmt(std::move(node), label, span);
  }

  StmtPtr whileStatement() {
    Label label = newLabel();
    SourceSpan span = expect("while").span;
    expect("(");
    Loop loop;
    loop.kind = LoopKind::While;
    loop.condLabel = newLabel();
    loop.cond = expression();
    expect(")");
    loop.body = statement();
    return makeStmt(std::move(loop), label, span);
  }

  StmtPtr forStatement() {
    Label label = newLabel();
    SourceSpan span = expect("for").span;
    expect("(");
    Loop loop;
    loop.kind = LoopKind::For;
    if (!check(";")) {
      if (check("int")) {
        next();
        loop.init = declarator();
        if (check(",")) unsupported("multiple declarators in a for-loop header", peek().span);
      } else {
        loop.init = simpleStatement();
      }
    }
    expect(";");
    loop.condLabel = newLabel();
    if (check(";")) {
      loop.cond = makeLit(1, peek().span);
    } else {
      loop.cond = expression();
    }
    expect(";");
    if (!check(")")) loop.step = simpleStatement();
    if (check(",")) unsupported("comma operator", peek().span);
    expect(")");
    loop.body = statement();
    return makeStmt(std::move(loop), label, span);
  }

  /// Assignment, compound assignment, increment/decrement or call.
  StmtPtr simpleStatement() {
    Label label = newLabel();
    SourceSpan span = peek().span;
    if (check("*")) unsupported("pointer dereference", peek().span);
    if (check("++") || check("--")) {
      bool inc = next().text == "++";
      const Token& id = peek();
      std::string name = identifier("variable");
      if (check("[")) unsupported("increment of array elements", peek().span);
      return makeStmt(stepAssign(name, id.span, inc ? BinaryOp::Add : BinaryOp::Sub,
                                 makeLit(1, id.span)),
                      label, cover(span, id.span));
    }
    const Token& id = peek();
    std::string name = identifier("statement");
    if (check("(")) {
      Call c = callTail(name);
      return makeStmt(std::move(c), label, span);
    }
    if (accept("[")) {
      ExprPtr index = expression();
      expect("]");
      ArrayAssign a{name, index, nullptr};
      SourceSpan opSpan = peek().span;
      if (accept("=")) {
        a.value = expression();
      } else if (check("+=") || check("-=")) {
        BinaryOp op = next().text == "+=" ? BinaryOp::Add : BinaryOp::Sub;
        a.value = makeBinary(op, makeArrayRead(name, index, id.span), expression(), opSpan);
      } else if (check("++") || check("--")) {
        unsupported("increment of array elements", peek().span);
      } else {
        syntax("expected assignment to array element");
      }
      return makeStmt(std::move(a), label, span);
    }
    if (accept("=")) {
      if (peek().kind == TokKind::Ident && peek(1).text == "(" && !kKeywords.count(peek().text)) {
        std::string callee = identifier("function name");
        Call c = callTail(callee);
        c.result = name;
        return makeStmt(std::move(c), label, span);
      }
      return makeStmt(Assign{name, expression()}, label, span);
    }
    if (check("+=") || check("-=")) {
      SourceSpan opSpan = peek().span;
      BinaryOp op = next().text == "+=" ? BinaryOp::Add : BinaryOp::Sub;
      return makeStmt(stepAssign(name, id.span, op, expression(), opSpan), label, span);
    }
    if (check("++") || check("--")) {
      const Token& opTok = next();
      BinaryOp op = opTok.text == "++" ? BinaryOp::Add : BinaryOp::Sub;
      return makeStmt(stepAssign(name, id.span, op, makeLit(1, opTok.span)), label,
                      cover(span, opTok.span));
    }
    if (check("*=") || check("/=") || check("%=")) {
      unsupported("compound assignment '" + peek().text + "'", peek().span);
    }
    syntax("expected assignment or call");
  }

  static Assign stepAssign(const std::string& name, const SourceSpan& nameSpan, BinaryOp op,
                           ExprPtr amount, SourceSpan opSpan = {}) {
    if (opSpan.file.empty()) opSpan = nameSpan;
    return Assign{name, makeBinary(op, makeVar(name, nameSpan), std::move(amount), opSpan)};
  }

  Call callTail(const std::string& callee) {
    Call c;
    c.callee = callee;
    expect("(");
    if (!check(")")) {
      do {
        c.args.push_back(expression());
      } while (accept(","));
    }
    expect(")");
    if (!check(";")) unsupported("call used inside an expression", peek().span);
    return c;
  }

  // ---- expressions ---------------------------------------------------------
  static int precedence(const std::string& op) {
    if (op == "||") return 1;
    if (op == "&&") return 2;
    if (op == "==" || op == "!=") return 3;
    if (op == "<" || op == ">" || op == "<=" || op == ">=") return 4;
    if (op == "+" || op == "-") return 5;
    if (op == "*" || op == "/" || op == "%") return 6;
    return 0;
  }

  static BinaryOp binaryOp(const std::string& op) {
    static const std::map<std::string, BinaryOp> kOps = {
        {"+", BinaryOp::Add}, {"-", BinaryOp::Sub}, {"*", BinaryOp::Mul},
        {"/", BinaryOp::Div}, {"%", BinaryOp::Mod}, {"<", BinaryOp::Lt},
        {">", BinaryOp::Gt},  {"<=", BinaryOp::Le}, {">=", BinaryOp::Ge},
        {"==", BinaryOp::Eq}, {"!=", BinaryOp::Ne}, {"&&", BinaryOp::And},
        {"||", BinaryOp::Or}};
    return kOps.at(op);
  }

  ExprPtr expression() { return binary(1); }

  ExprPtr binary(int minPrec) {
    ExprPtr lhs = unary();
    while (true) {
      const Token& t = peek();
      if (t.kind == TokKind::Punct) rejectSideEffect(t);
      int prec = t.kind == TokKind::Punct ? precedence(t.text) : 0;
      if (prec == 0 || prec < minPrec) return lhs;
      SourceSpan opSpan = t.span;
      BinaryOp op = binaryOp(next().text);
      ExprPtr rhs = binary(prec + 1);
      lhs = makeBinary(op, lhs, rhs, opSpan);
    }
  }

  void rejectSideEffect(const Token& t) const {
    if (t.text == "++" || t.text == "--" || t.text == "+=" || t.text == "-=" ||
        t.text == "*=" || t.text == "/=" || t.text == "%=") {
      unsupported("side effects inside expressions", t.span);
    }
    if (t.text == "=" && inParens_ > 0) unsupported("assignment inside an expression", t.span);
  }

  ExprPtr unary() {
    const Token& t = peek();
    if (t.kind == TokKind::Punct) {
      rejectSideEffect(t);
      if (t.text == "-") {
        next();
        return makeUnary(UnaryOp::Neg, unary(), t.span);
      }
      if (t.text == "+") {
        next();
        return unary();
      }
      if (t.text == "!") {
        next();
        return makeUnary(UnaryOp::Not, unary(), t.span);
      }
      if (t.text == "&") {
        next();
        const Token& id = peek();
        std::string name = identifier("variable after '&'");
        if (check("[")) unsupported("address of array elements", peek().span);
        return makeUnary(UnaryOp::AddrOf, makeVar(name, id.span), t.span);
      }
      if (t.text == "*") unsupported("pointer dereference", t.span);
    }
    return primary();
  }

  ExprPtr primary() {
    const Token& t = peek();
    if (t.kind == TokKind::Number) {
      next();
      return makeLit(parseInteger(t.text), t.span);
    }
    if (t.kind == TokKind::Ident) {
      std::string name = identifier("expression");
      if (check("(")) unsupported("call used inside an expression", t.span);
      if (accept("[")) {
        ++inParens_;
        ExprPtr index = expression();
        --inParens_;
        expect("]");
        return makeArrayRead(name, index, t.span);
      }
      if (check("->") || check(".")) unsupported("member access", peek().span);
      return makeVar(name, t.span);
    }
    if (accept("(")) {
      ++inParens_;
      ExprPtr e = expression();
      --inParens_;
      expect(")");
      return e;
    }
    syntax("expected expression");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int nextLabel_ = 1;
  int inParens_ = 0;
};

// ---- name resolution ------------------------------------------------------

enum class VarKind { Scalar, Pointer, Array };

class Resolver {
 public:
  explicit Resolver(const Program& p) : program_(p) {}

  void run() {
    for (const auto& g : program_.globals) {
      const auto& d = *g->as<Decl>();
      if (d.init) checkExpr(*d.init, globals_);
      declare(globals_, d, g->span, /*checkGlobals=*/false);
    }
    std::set<std::string> fnNames;
    for (const auto& f : program_.functions) {
      if (!fnNames.insert(f.name).second) {
        throw ParseError(ParseError::Kind::Semantic, "redefinition of function '" + f.name + "'",
                         f.span);
      }
      if (globals_.count(f.name)) {
        throw ParseError(ParseError::Kind::Semantic,
                         "function '" + f.name + "' clashes with a global variable", f.span);
      }
    }
    for (const auto& f : program_.functions) function(f);
  }

 private:
  using Scope = std::map<std::string, VarKind>;

  void declare(Scope& scope, const Decl& d, const SourceSpan& span, bool checkGlobals) {
    if (scope.count(d.name) || (checkGlobals && globals_.count(d.name))) {
      throw ParseError(ParseError::Kind::Semantic,
                       "redeclaration of '" + d.name + "' (names must be unique per function)",
                       span);
    }
    scope[d.name] = d.arraySize ? VarKind::Array : (d.pointer ? VarKind::Pointer : VarKind::Scalar);
  }

  void function(const Function& f) {
    Scope locals;
    for (const auto& p : f.params) {
      Decl d{p.name, nullptr, p.pointer, std::nullopt};
      declare(locals, d, f.span, true);
    }
    forEachStmt(*f.body, [&](const Stmt& s) {
      if (const auto* d = s.as<Decl>()) declare(locals, *d, s.span, true);
    });
    fn_ = &f;
    stmt(*f.body, locals, 0);
  }

  const VarKind* lookup(const Scope& scope, const std::string& name) const {
    if (auto it = scope.find(name); it != scope.end()) return &it->second;
    if (auto it = globals_.find(name); it != globals_.end()) return &it->second;
    return nullptr;
  }

  void requireScalar(const Scope& scope, const std::string& name, const SourceSpan& span) const {
    const VarKind* k = lookup(scope, name);
    if (!k) {
      throw ParseError(ParseError::Kind::Semantic, "use of undeclared variable '" + name + "'",
                       span);
    }
    if (*k == VarKind::Array) {
      throw ParseError(ParseError::Kind::Unsupported,
                       "array '" + name + "' used without an index", span);
    }
  }

  void requireArray(const Scope& scope, const std::string& name, const SourceSpan& span) const {
    const VarKind* k = lookup(scope, name);
    if (!k) {
      throw ParseError(ParseError::Kind::Semantic, "use of undeclared array '" + name + "'", span);
    }
    if (*k != VarKind::Array) {
      throw ParseError(ParseError::Kind::Semantic, "'" + name + "' is not an array", span);
    }
  }

  void checkExpr(const Expr& e, const Scope& scope) const {
    forEachSubExpr(e, [&](const Expr& sub) {
      if (const auto* v = sub.as<VarRef>()) requireScalar(scope, v->name, sub.span);
      if (const auto* a = sub.as<ArrayRead>()) requireArray(scope, a->array, sub.span);
    });
  }

  void stmt(const Stmt& s, const Scope& scope, int loopDepth) {
    std::visit(
        [&](const auto& node) {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, Assign>) {
            requireScalar(scope, node.target, s.span);
            checkExpr(*node.value, scope);
          } else if constexpr (std::is_same_v<T, ArrayAssign>) {
            requireArray(scope, node.array, s.span);
            checkExpr(*node.index, scope);
            checkExpr(*node.value, scope);
          } else if constexpr (std::is_same_v<T, Decl>) {
            if (node.init) checkExpr(*node.init, scope);
          } else if constexpr (std::is_same_v<T, If>) {
            checkExpr(*node.cond, scope);
            stmt(*node.then, scope, loopDepth);
            if (node.otherwise) stmt(*node.otherwise, scope, loopDepth);
          } else if constexpr (std::is_same_v<T, Loop>) {
            if (node.init) stmt(*node.init, scope, loopDepth);
            checkExpr(*node.cond, scope);
            if (node.step) stmt(*node.step, scope, loopDepth);
            stmt(*node.body, scope, loopDepth + 1);
          } else if constexpr (std::is_same_v<T, Block>) {
            for (const auto& c : node.stmts) stmt(*c, scope, loopDepth);
          } else if constexpr (std::is_same_v<T, Call>) {
            const Function* callee = program_.findFunction(node.callee);
            if (!callee) {
              throw ParseError(ParseError::Kind::Semantic,
                               "call to undefined function '" + node.callee + "'", s.span);
            }
            if (callee->params.size() != node.args.size()) {
              throw ParseError(ParseError::Kind::Semantic,
                               "wrong number of arguments to '" + node.callee + "'", s.span);
            }
            if (node.result) {
              requireScalar(scope, *node.result, s.span);
              if (!callee->returnsInt) {
                throw ParseError(ParseError::Kind::Semantic,
                                 "void function '" + node.callee + "' used as a value", s.span);
              }
            }
            for (const auto& a : node.args) checkExpr(*a, scope);
          } else if constexpr (std::is_same_v<T, Return>) {
            if (node.value) {
              if (!fn_->returnsInt) {
                throw ParseError(ParseError::Kind::Semantic,
                                 "void function '" + fn_->name + "' returns a value", s.span);
              }
              checkExpr(*node.value, scope);
            }
          } else if constexpr (std::is_same_v<T, Break>) {
            if (loopDepth == 0) {
              throw ParseError(ParseError::Kind::Semantic, "'break' outside of a loop", s.span);
            }
          }
        },
        s.node);
  }

  const Program& program_;
  Scope globals_;
  const Function* fn_ = nullptr;
};

}  // namespace

Program parse(std::string_view text, const std::string& fileName) {
  Lexer lexer(text, fileName);
  Parser parser(lexer.run());
  Program program = parser.run();
  Resolver(program).run();
  return program;
}

}  // namespace loopcount
