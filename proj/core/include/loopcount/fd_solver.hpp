#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "loopcount/fd_domain.hpp"
#include "loopcount/integer.hpp"

namespace loopcount {

using FdVarId = int;

/// constant + sum of coefficient * variable; no duplicate or zero terms.
class LinExpr {
 public:
  LinExpr() = default;
  LinExpr(Integer constant) : constant_(std::move(constant)) {}  // NOLINT
  LinExpr(int constant) : constant_(constant) {}                  // NOLINT

  static LinExpr var(FdVarId v, Integer coef = 1);

  const Integer& constant() const { return constant_; }
  const std::vector<std::pair<Integer, FdVarId>>& terms() const { return terms_; }
  Integer coefficient(FdVarId v) const;
  bool isConstant() const { return terms_.empty(); }

  LinExpr& operator+=(const LinExpr& other);
  LinExpr& operator-=(const LinExpr& other);
  LinExpr& operator*=(const Integer& k);

  friend LinExpr operator+(LinExpr a, const LinExpr& b) { return a += b; }
  friend LinExpr operator-(LinExpr a, const LinExpr& b) { return a -= b; }
  friend LinExpr operator*(LinExpr a, const Integer& k) { return a *= k; }
  friend LinExpr operator*(const Integer& k, LinExpr a) { return a *= k; }
  friend LinExpr operator-(LinExpr a) { return a *= Integer(-1); }
  friend bool operator==(const LinExpr&, const LinExpr&) = default;

 private:
  void add(const Integer& coef, FdVarId v);

  Integer constant_ = 0;
  std::vector<std::pair<Integer, FdVarId>> terms_;  // sorted by variable
};

struct LeConstraint {
  LinExpr lhs, rhs;
};
struct GeConstraint {
  LinExpr lhs, rhs;
};
struct EqConstraint {
  LinExpr lhs, rhs;
};
/// expr = 0 (mod modulus)
struct CongruenceZero {
  LinExpr expr;
  Integer modulus = 1;
};
using Constraint = std::variant<LeConstraint, GeConstraint, EqConstraint, CongruenceZero>;

Constraint le(LinExpr lhs, LinExpr rhs);
Constraint ge(LinExpr lhs, LinExpr rhs);
Constraint eq(LinExpr lhs, LinExpr rhs);
Constraint congruenceZero(LinExpr expr, Integer modulus);

struct SolverConfig {
  /// Counted firings allowed per propagator and propagate() call.
  int propagationBudget = 64;
  /// Search nodes allowed per countSolutions()/enumerate() call.
  std::uint64_t enumerationCap = 10'000'000;

  /// `base` with LOOPCOUNT_SOLVER_BUDGET applied when set to a positive integer.
  static SolverConfig fromEnvironment(SolverConfig base);
  static SolverConfig fromEnvironment();
};

struct CountResult {
  enum class Status { Ok, Unbounded, BudgetExceeded };
  Status status = Status::Ok;
  Integer count = 0;
  std::uint64_t nodes = 0;

  bool ok() const { return status == Status::Ok; }
};

struct EnumerateResult {
  CountResult::Status status = CountResult::Status::Ok;
  std::vector<std::vector<Integer>> solutions;
  std::uint64_t nodes = 0;
};

const char* toString(CountResult::Status s);

/// Finite-domain constraint store over strided-interval domains with
/// bounds and congruence propagation.
class Csp {
 public:
  enum class Status { Ok, Inconsistent };

  explicit Csp(SolverConfig config = {});

  /// Fresh variable, by default over all integers.
  FdVarId newVar(FdDomain domain = FdDomain::top());
  std::size_t varCount() const { return domains_.size(); }
  const FdDomain& domain(FdVarId v) const;
  const SolverConfig& config() const { return config_; }
  void setConfig(const SolverConfig& config) { config_ = config; }

  /// Records the constraint and propagates. Throws std::out_of_range for
  /// undeclared variables and std::invalid_argument for a modulus < 1.
  Status post(const Constraint& c);
  Status propagate();
  bool inconsistent() const { return inconsistent_; }

  const std::vector<Constraint>& constraints() const { return constraints_; }

  /// Number of assignments to `vars` that extend to a solution. Variables
  /// whose remaining constraints all hold for every domain member contribute
  /// their domain size without being enumerated.
  CountResult countSolutions(const std::vector<FdVarId>& vars) const;
  /// Distinct assignments to `vars` that extend to a solution, in
  /// lexicographic order.
  EnumerateResult enumerate(const std::vector<FdVarId>& vars) const;

  /// Counted propagator firings in the last propagate() call.
  std::uint64_t lastFirings() const { return lastFirings_; }

 private:
  struct Propagator {
    // sum(coef * var) + constant <= 0, or = 0 (mod modulus) when modulus > 0
    std::vector<std::pair<Integer, FdVarId>> terms;
    Integer constant;
    Integer modulus = 0;
  };
  enum class Truth { Entailed, Disentailed, Open };

  friend class Search;

  void addPropagator(Propagator p);
  bool fire(const Propagator& p, std::vector<FdVarId>& changed);
  bool fireLinear(const Propagator& p, std::vector<FdVarId>& changed);
  bool fireCongruence(const Propagator& p, std::vector<FdVarId>& changed);
  bool narrow(FdVarId v, const FdDomain& d, std::vector<FdVarId>& changed);
  Truth truth(const Propagator& p) const;

  SolverConfig config_;
  std::vector<FdDomain> domains_;
  std::vector<Constraint> constraints_;
  std::vector<Propagator> propagators_;
  std::vector<std::vector<std::size_t>> watchers_;  // var -> propagator indices
  bool inconsistent_ = false;
  std::uint64_t lastFirings_ = 0;
};

}  // namespace loopcount
