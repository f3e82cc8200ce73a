#include "loopcount/fd_solver.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <stdexcept>

namespace loopcount {

LinExpr LinExpr::var(FdVarId v, Integer coef) {
  LinExpr e;
  e.add(coef, v);
  return e;
}

Integer LinExpr::coefficient(FdVarId v) const {
  for (const auto& [c, x] : terms_) {
    if (x == v) return c;
  }
  return 0;
}

void LinExpr::add(const Integer& coef, FdVarId v) {
  if (coef == 0) return;
  auto it = std::lower_bound(terms_.begin(), terms_.end(), v,
                             [](const auto& t, FdVarId x) { return t.second < x; });
  if (it != terms_.end() && it->second == v) {
    it->first += coef;
    if (it->first == 0) terms_.erase(it);
  } else {
    terms_.insert(it, {coef, v});
  }
}

LinExpr& LinExpr::operator+=(const LinExpr& other) {
  constant_ += other.constant_;
  for (const auto& [c, v] : other.terms_) add(c, v);
  return *this;
}

LinExpr& LinExpr::operator-=(const LinExpr& other) {
  constant_ -= other.constant_;
  for (const auto& [c, v] : other.terms_) add(-c, v);
  return *this;
}

LinExpr& LinExpr::operator*=(const Integer& k) {
  if (k == 0) {
    *this = LinExpr();
    return *this;
  }
  constant_ *= k;
  for (auto& t : terms_) t.first *= k;
  return *this;
}

Constraint le(LinExpr lhs, LinExpr rhs) { return LeConstraint{std::move(lhs), std::move(rhs)}; }
Constraint ge(LinExpr lhs, LinExpr rhs) { return GeConstraint{std::move(lhs), std::move(rhs)}; }
Constraint eq(LinExpr lhs, LinExpr rhs) { return EqConstraint{std::move(lhs), std::move(rhs)}; }
Constraint congruenceZero(LinExpr expr, Integer modulus) {
  return CongruenceZero{std::move(expr), std::move(modulus)};
}

SolverConfig SolverConfig::fromEnvironment(SolverConfig base) {
  if (const char* env = std::getenv("LOOPCOUNT_SOLVER_BUDGET")) {
    try {
      int b = std::stoi(env);
      if (b > 0) base.propagationBudget = b;
    } catch (const std::exception&) {
    }
  }
  return base;
}

SolverConfig SolverConfig::fromEnvironment() { return fromEnvironment(SolverConfig{}); }

const char* toString(CountResult::Status s) {
  switch (s) {
    case CountResult::Status::Ok: return "ok";
    case CountResult::Status::Unbounded: return "unbounded";
    case CountResult::Status::BudgetExceeded: return "budget-exceeded";
  }
  return "?";
}

Csp::Csp(SolverConfig config) : config_(config) {}

FdVarId Csp::newVar(FdDomain domain) {
  if (domain.isEmpty()) inconsistent_ = true;
  domains_.push_back(std::move(domain));
  watchers_.emplace_back();
  return static_cast<FdVarId>(domains_.size() - 1);
}

const FdDomain& Csp::domain(FdVarId v) const {
  if (v < 0 || static_cast<std::size_t>(v) >= domains_.size()) {
    throw std::out_of_range("unknown solver variable " + std::to_string(v));
  }
  return domains_[v];
}

Csp::Status Csp::post(const Constraint& c) {
  auto check = [&](const LinExpr& e) {
    for (const auto& t : e.terms()) domain(t.second);
  };
  auto linear = [&](const LinExpr& e) {
    check(e);
    addPropagator({e.terms(), e.constant(), 0});
  };
  if (const auto* x = std::get_if<LeConstraint>(&c)) {
    linear(x->lhs - x->rhs);
  } else if (const auto* x = std::get_if<GeConstraint>(&c)) {
    linear(x->rhs - x->lhs);
  } else if (const auto* x = std::get_if<EqConstraint>(&c)) {
    linear(x->lhs - x->rhs);
    linear(x->rhs - x->lhs);
  } else {
    const auto& cz = std::get<CongruenceZero>(c);
    if (cz.modulus < 1) throw std::invalid_argument("congruence modulus must be positive");
    check(cz.expr);
    if (cz.modulus > 1) addPropagator({cz.expr.terms(), cz.expr.constant(), cz.modulus});
  }
  constraints_.push_back(c);
  return propagate();
}

void Csp::addPropagator(Propagator p) {
  std::size_t index = propagators_.size();
  for (const auto& t : p.terms) watchers_[t.second].push_back(index);
  propagators_.push_back(std::move(p));
}

bool Csp::narrow(FdVarId v, const FdDomain& d, std::vector<FdVarId>& changed) {
  if (d.isEmpty()) return false;
  if (!(d == domains_[v])) {
    domains_[v] = d;
    changed.push_back(v);
  }
  return true;
}

bool Csp::fire(const Propagator& p, std::vector<FdVarId>& changed) {
  return p.modulus > 0 ? fireCongruence(p, changed) : fireLinear(p, changed);
}

bool Csp::fireLinear(const Propagator& p, std::vector<FdVarId>& changed) {
  // Smallest value of each coef * var term.
  std::vector<Bound> mins;
  Integer finiteSum = p.constant;
  int infinite = 0;
  for (const auto& [a, v] : p.terms) {
    const FdDomain& d = domains_[v];
    Bound m = a > 0 ? Bound(a) * d.lo() : Bound(a) * d.hi();
    if (m.isFinite()) {
      finiteSum += m.value();
    } else {
      ++infinite;
    }
    mins.push_back(std::move(m));
  }
  if (p.terms.empty()) return p.constant <= 0;
  if (infinite == 0 && finiteSum > 0) return false;
  for (std::size_t k = 0; k < p.terms.size(); ++k) {
    Integer rest;
    if (mins[k].isFinite()) {
      if (infinite > 0) continue;
      rest = finiteSum - mins[k].value();
    } else {
      if (infinite > 1) continue;
      rest = finiteSum;
    }
    // a * x + rest <= 0
    const auto& [a, v] = p.terms[k];
    const FdDomain& d = domains_[v];
    FdDomain nd = a > 0 ? d.withUpperBound(floorDiv(-rest, a)) : d.withLowerBound(ceilDiv(-rest, a));
    if (!narrow(v, nd, changed)) return false;
  }
  return true;
}

namespace {

/// a * x as (modulus, value): the product is value + k * modulus for some k;
/// modulus 0 means exactly value.
std::pair<Integer, Integer> congruenceOf(const Integer& a, const FdDomain& d) {
  if (d.isSingleton()) return {0, a * d.lo().value()};
  return {abs(a * d.stride()), a * d.residue()};
}

}  // namespace

bool Csp::fireCongruence(const Propagator& p, std::vector<FdVarId>& changed) {
  std::vector<std::pair<Integer, Integer>> parts;
  Integer gAll = p.modulus;
  Integer sAll = p.constant;
  for (const auto& [a, v] : p.terms) {
    parts.push_back(congruenceOf(a, domains_[v]));
    gAll = gcd(gAll, parts.back().first);
    sAll += parts.back().second;
  }
  if (floorMod(sAll, gAll) != 0) return false;
  for (std::size_t k = 0; k < p.terms.size(); ++k) {
    const auto& [a, v] = p.terms[k];
    if (domains_[v].isSingleton()) continue;
    Integer g = p.modulus;
    Integer s = p.constant;
    for (std::size_t j = 0; j < p.terms.size(); ++j) {
      if (j == k) continue;
      g = gcd(g, parts[j].first);
      s += parts[j].second;
    }
    if (g == 1) continue;
    auto sol = solveLinearCongruence(a, -s, g);
    if (!sol) return false;
    if (!narrow(v, domains_[v].withCongruence(sol->first, sol->second), changed)) return false;
    parts[k] = congruenceOf(a, domains_[v]);
  }
  return true;
}

Csp::Truth Csp::truth(const Propagator& p) const {
  if (p.modulus > 0) {
    Integer g = p.modulus;
    Integer s = p.constant;
    for (const auto& [a, v] : p.terms) {
      auto [m, r] = congruenceOf(a, domains_[v]);
      g = gcd(g, m);
      s += r;
    }
    if (floorMod(s, g) != 0) return Truth::Disentailed;
    return g == p.modulus ? Truth::Entailed : Truth::Open;
  }
  Bound lo = p.constant, hi = p.constant;
  for (const auto& [a, v] : p.terms) {
    const FdDomain& d = domains_[v];
    if (d.isEmpty()) return Truth::Disentailed;
    lo = lo + (a > 0 ? Bound(a) * d.lo() : Bound(a) * d.hi());
    hi = hi + (a > 0 ? Bound(a) * d.hi() : Bound(a) * d.lo());
    if (lo.isNegInf() && hi.isPosInf()) return Truth::Open;
  }
  if (hi <= Bound(0)) return Truth::Entailed;
  if (lo > Bound(0)) return Truth::Disentailed;
  return Truth::Open;
}

Csp::Status Csp::propagate() {
  lastFirings_ = 0;
  if (inconsistent_) return Status::Inconsistent;
  const std::size_t n = propagators_.size();
  std::deque<std::size_t> queue;
  std::vector<char> queued(n, 1);
  std::vector<int> fired(n, 0);
  for (std::size_t i = 0; i < n; ++i) queue.push_back(i);
  std::vector<FdVarId> changed;
  while (!queue.empty()) {
    std::size_t i = queue.front();
    queue.pop_front();
    queued[i] = 0;
    if (fired[i] >= config_.propagationBudget) continue;
    const Propagator& p = propagators_[i];
    bool becameFinite = false;
    std::vector<char> wasFinite;
    for (const auto& t : p.terms) wasFinite.push_back(domains_[t.second].isFinite());
    changed.clear();
    if (!fire(p, changed)) {
      inconsistent_ = true;
      return Status::Inconsistent;
    }
    bool allFinite = true;
    for (std::size_t k = 0; k < p.terms.size(); ++k) {
      bool fin = domains_[p.terms[k].second].isFinite();
      allFinite = allFinite && fin;
      becameFinite = becameFinite || (fin && !wasFinite[k]);
    }
    // Narrowing finite domains cannot go on forever; only firings that
    // leave some domain infinite use up the budget.
    if (!allFinite && !becameFinite) {
      ++fired[i];
      ++lastFirings_;
    }
    for (FdVarId v : changed) {
      for (std::size_t j : watchers_[v]) {
        if (!queued[j]) {
          queued[j] = 1;
          queue.push_back(j);
        }
      }
    }
  }
  return Status::Ok;
}

class Search {
 public:
  Search(const Csp& csp) : work_(csp), cap_(csp.config().enumerationCap) {}

  CountResult count(const std::vector<FdVarId>& vars) {
    counted_.assign(work_.varCount(), 0);
    for (FdVarId v : vars) {
      work_.domain(v);
      counted_[v] = 1;
    }
    CountResult r;
    r.status = countNode(r.count);
    r.nodes = nodes_;
    if (!r.ok()) r.count = 0;
    return r;
  }

  EnumerateResult enumerate(const std::vector<FdVarId>& vars) {
    for (FdVarId v : vars) work_.domain(v);
    EnumerateResult r;
    std::vector<Integer> current;
    r.status = enumNode(vars, 0, current, r.solutions);
    r.nodes = nodes_;
    if (r.status != CountResult::Status::Ok) r.solutions.clear();
    return r;
  }

 private:
  using Status = CountResult::Status;

  /// Variables occurring in constraints that are not yet known to hold;
  /// nullopt when some constraint is known to fail.
  std::optional<std::vector<char>> involved() const {
    std::vector<char> out(work_.varCount(), 0);
    for (const auto& p : work_.propagators_) {
      auto t = work_.truth(p);
      if (t == Csp::Truth::Disentailed) return std::nullopt;
      if (t == Csp::Truth::Open) {
        for (const auto& term : p.terms) out[term.second] = 1;
      }
    }
    return out;
  }

  static std::optional<FdVarId> smallest(const std::vector<FdVarId>& candidates, const Csp& w,
                                         bool& sawInfinite) {
    std::optional<FdVarId> best;
    Integer bestCount;
    for (FdVarId v : candidates) {
      auto c = domainCount(w.domains_[v]);
      if (!c) {
        sawInfinite = true;
        continue;
      }
      if (!best || *c < bestCount) {
        best = v;
        bestCount = *c;
      }
    }
    return best;
  }

  template <class Visit>
  Status forEachValue(FdVarId v, Visit visit) {
    const FdDomain d = work_.domains_[v];
    std::vector<FdDomain> saved = work_.domains_;
    for (Integer x = d.lo().value(); x <= d.hi().value(); x += d.stride()) {
      work_.domains_[v] = FdDomain::singleton(x);
      Status s = visit(x);
      work_.domains_ = saved;
      work_.inconsistent_ = false;
      if (s != Status::Ok) return s;
    }
    return Status::Ok;
  }

  bool enter(Status& s) {
    if (++nodes_ > cap_) {
      s = Status::BudgetExceeded;
      return false;
    }
    return true;
  }

  Status countNode(Integer& out) {
    out = 0;
    Status s = Status::Ok;
    if (!enter(s)) return s;
    if (work_.propagate() == Csp::Status::Inconsistent) return Status::Ok;
    auto inv = involved();
    if (!inv) return Status::Ok;
    std::vector<FdVarId> branch;
    bool openOther = false;
    for (std::size_t v = 0; v < inv->size(); ++v) {
      if (!(*inv)[v]) continue;
      if (counted_[v] && !work_.domains_[v].isSingleton()) {
        branch.push_back(static_cast<FdVarId>(v));
      } else if (!counted_[v]) {
        openOther = true;
      }
    }
    if (branch.empty()) {
      if (openOther) {
        bool found = false;
        s = exists(found);
        if (s != Status::Ok || !found) return s;
      }
      Integer product = 1;
      for (std::size_t v = 0; v < counted_.size(); ++v) {
        if (!counted_[v]) continue;
        auto c = domainCount(work_.domains_[v]);
        if (!c) return Status::Unbounded;
        product *= *c;
      }
      out = product;
      return Status::Ok;
    }
    bool sawInfinite = false;
    auto v = smallest(branch, work_, sawInfinite);
    if (!v) return Status::Unbounded;
    return forEachValue(*v, [&](const Integer&) {
      Integer sub;
      Status st = countNode(sub);
      out += sub;
      return st;
    });
  }

  /// Whether the current domains admit a full solution.
  Status exists(bool& found) {
    found = false;
    Status s = Status::Ok;
    if (!enter(s)) return s;
    if (work_.propagate() == Csp::Status::Inconsistent) return Status::Ok;
    auto inv = involved();
    if (!inv) return Status::Ok;
    std::vector<FdVarId> open;
    for (std::size_t v = 0; v < inv->size(); ++v) {
      if ((*inv)[v] && !work_.domains_[v].isSingleton()) open.push_back(static_cast<FdVarId>(v));
    }
    if (open.empty()) {
      // Every remaining constraint is over fixed variables; open ones failed.
      found = std::none_of(inv->begin(), inv->end(), [](char c) { return c; });
      return Status::Ok;
    }
    bool sawInfinite = false;
    auto v = smallest(open, work_, sawInfinite);
    if (!v) return Status::Unbounded;
    const FdDomain d = work_.domains_[*v];
    std::vector<FdDomain> saved = work_.domains_;
    for (Integer x = d.lo().value(); x <= d.hi().value(); x += d.stride()) {
      work_.domains_[*v] = FdDomain::singleton(x);
      s = exists(found);
      work_.domains_ = saved;
      work_.inconsistent_ = false;
      if (s != Status::Ok || found) return s;
    }
    return Status::Ok;
  }

  Status enumNode(const std::vector<FdVarId>& vars, std::size_t index, std::vector<Integer>& current,
                  std::vector<std::vector<Integer>>& out) {
    Status s = Status::Ok;
    if (!enter(s)) return s;
    if (work_.propagate() == Csp::Status::Inconsistent) return Status::Ok;
    if (index == vars.size()) {
      bool found = false;
      s = exists(found);
      if (s == Status::Ok && found) out.push_back(current);
      return s;
    }
    FdVarId v = vars[index];
    const FdDomain& d = work_.domains_[v];
    if (d.isSingleton()) {
      current.push_back(d.lo().value());
      s = enumNode(vars, index + 1, current, out);
      current.pop_back();
      return s;
    }
    if (!d.isFinite()) return Status::Unbounded;
    return forEachValue(v, [&](const Integer& x) {
      current.push_back(x);
      Status st = enumNode(vars, index + 1, current, out);
      current.pop_back();
      return st;
    });
  }

  Csp work_;
  std::uint64_t cap_;
  std::uint64_t nodes_ = 0;
  std::vector<char> counted_;
};

CountResult Csp::countSolutions(const std::vector<FdVarId>& vars) const {
  return Search(*this).count(vars);
}

EnumerateResult Csp::enumerate(const std::vector<FdVarId>& vars) const {
  return Search(*this).enumerate(vars);
}

}  // namespace loopcount
