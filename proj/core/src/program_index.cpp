#include "loopcount/program_index.hpp"

#include <stdexcept>

namespace loopcount {

namespace {

void addressArgs(const Call& call, std::set<std::string>& out) {
  for (const auto& a : call.args) {
    forEachSubExpr(*a, [&](const Expr& e) {
      if (const auto* u = e.as<Unary>(); u && u->op == UnaryOp::AddrOf) {
        out.insert(u->operand->as<VarRef>()->name);
      }
    });
  }
}

}  // namespace

ProgramIndex::ProgramIndex(const Program& program) : program_(program) {
  for (const auto& g : program.globals) {
    globals_.insert(g->as<Decl>()->name);
    indexStmt(*g, nullptr, nullptr, 0, nullptr);
  }
  for (const auto& f : program.functions) indexStmt(*f.body, &f, nullptr, 0, nullptr);

  // Direct global writes and call edges, then a fixpoint over the call graph.
  std::map<std::string, std::set<std::string>> callees;
  for (const auto& f : program.functions) {
    auto& writes = globalWrites_[f.name];
    forEachStmt(*f.body, [&](const Stmt& s) {
      std::set<std::string> w;
      if (const auto* a = s.as<Assign>()) w.insert(a->target);
      if (const auto* c = s.as<Call>()) {
        if (c->result) w.insert(*c->result);
        addressArgs(*c, w);
        callees[f.name].insert(c->callee);
      }
      for (const auto& name : w) {
        if (globals_.count(name)) writes.insert(name);
      }
    });
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [caller, set] : callees) {
      auto& writes = globalWrites_[caller];
      for (const auto& callee : set) {
        for (const auto& g : globalWrites_[callee]) changed |= writes.insert(g).second;
      }
    }
  }
}

void ProgramIndex::indexStmt(const Stmt& s, const Function* fn, const Stmt* parent,
                             std::size_t index, const Stmt* loop) {
  stmts_[s.label] = &s;
  sites_[s.label] = StmtSite{fn, parent, index, loop};
  if (const auto* b = s.as<Block>()) {
    for (std::size_t i = 0; i < b->stmts.size(); ++i) indexStmt(*b->stmts[i], fn, &s, i, loop);
  } else if (const auto* i = s.as<If>()) {
    indexStmt(*i->then, fn, &s, 0, loop);
    if (i->otherwise) indexStmt(*i->otherwise, fn, &s, 1, loop);
  } else if (const auto* l = s.as<Loop>()) {
    loops_.push_back(&s);
    // init runs before the loop; the step belongs to the loop.
    if (l->init) indexStmt(*l->init, fn, &s, 0, loop);
    indexStmt(*l->body, fn, &s, 0, &s);
    if (l->step) indexStmt(*l->step, fn, &s, 1, &s);
  }
}

const std::set<std::string>& ProgramIndex::globalWrites(std::string_view function) const {
  static const std::set<std::string> kEmpty;
  auto it = globalWrites_.find(function);
  return it == globalWrites_.end() ? kEmpty : it->second;
}

const Stmt* ProgramIndex::stmt(Label label) const {
  auto it = stmts_.find(label);
  return it == stmts_.end() ? nullptr : it->second;
}

const StmtSite& ProgramIndex::site(Label label) const {
  auto it = sites_.find(label);
  if (it == sites_.end()) throw std::out_of_range("unknown label " + toString(label));
  return it->second;
}

const Stmt* ProgramIndex::parentLoop(const Stmt& loop) const {
  return site(loop.label).enclosingLoop;
}

int ProgramIndex::nestingDepth(const Stmt& loop) const {
  int depth = 0;
  for (const Stmt* p = parentLoop(loop); p; p = parentLoop(*p)) ++depth;
  return depth;
}

std::set<std::string> variablesIn(const Expr& e) {
  std::set<std::string> out;
  forEachSubExpr(e, [&](const Expr& sub) {
    if (const auto* v = sub.as<VarRef>()) out.insert(v->name);
  });
  return out;
}

std::set<std::string> writtenVariables(const Stmt& s, const ProgramIndex& index) {
  std::set<std::string> out;
  forEachStmt(s, [&](const Stmt& st) {
    if (const auto* a = st.as<Assign>()) out.insert(a->target);
    if (const auto* d = st.as<Decl>()) out.insert(d->name);
    if (const auto* c = st.as<Call>()) {
      if (c->result) out.insert(*c->result);
      addressArgs(*c, out);
      const auto& g = index.globalWrites(c->callee);
      out.insert(g.begin(), g.end());
    }
  });
  return out;
}

bool takesAddressOf(const Stmt& root, std::string_view name) {
  bool found = false;
  forEachStmt(root, [&](const Stmt& s) {
    forEachOwnExpr(s, [&](const Expr& e) {
      if (const auto* u = e.as<Unary>(); u && u->op == UnaryOp::AddrOf) {
        if (u->operand->as<VarRef>()->name == name) found = true;
      }
    });
  });
  return found;
}

}  // namespace loopcount
