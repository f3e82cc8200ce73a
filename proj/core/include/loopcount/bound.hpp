#pragma once

#include <compare>
#include <string>

#include "loopcount/integer.hpp"

namespace loopcount {

/// An extended integer: -inf, a finite value, or +inf.
class Bound {
 public:
  enum class Kind { NegInf, Finite, PosInf };

  Bound() = default;
  Bound(Integer value) : kind_(Kind::Finite), value_(std::move(value)) {}  // NOLINT
  Bound(long long value) : kind_(Kind::Finite), value_(value) {}          // NOLINT
  Bound(int value) : kind_(Kind::Finite), value_(value) {}                // NOLINT

  static Bound negInf() { return Bound(Kind::NegInf); }
  static Bound posInf() { return Bound(Kind::PosInf); }

  Kind kind() const { return kind_; }
  bool isFinite() const { return kind_ == Kind::Finite; }
  bool isNegInf() const { return kind_ == Kind::NegInf; }
  bool isPosInf() const { return kind_ == Kind::PosInf; }

  /// Only meaningful for finite bounds.
  const Integer& value() const { return value_; }

  /// -1, 0 or +1; infinities carry their sign.
  int sign() const;

  std::string toString() const;

  friend bool operator==(const Bound& a, const Bound& b);
  friend std::strong_ordering operator<=>(const Bound& a, const Bound& b);

 private:
  explicit Bound(Kind kind) : kind_(kind) {}

  Kind kind_ = Kind::Finite;
  Integer value_ = 0;
};

// Arithmetic on extended integers. Adding opposite infinities is a logic
// error (intervals never produce it). 0 * inf = 0.
Bound operator+(const Bound& a, const Bound& b);
Bound operator-(const Bound& a, const Bound& b);
Bound operator-(const Bound& a);
Bound operator*(const Bound& a, const Bound& b);

const Bound& min(const Bound& a, const Bound& b);
const Bound& max(const Bound& a, const Bound& b);

}  // namespace loopcount
