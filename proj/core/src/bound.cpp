#include "loopcount/bound.hpp"

#include <stdexcept>

namespace loopcount {

int Bound::sign() const {
  switch (kind_) {
    case Kind::NegInf: return -1;
    case Kind::PosInf: return 1;
    case Kind::Finite: return loopcount::sign(value_);
  }
  return 0;
}

std::string Bound::toString() const {
  switch (kind_) {
    case Kind::NegInf: return "-inf";
    case Kind::PosInf: return "+inf";
    case Kind::Finite: return value_.str();
  }
  return {};
}

bool operator==(const Bound& a, const Bound& b) {
  if (a.kind_ != b.kind_) return false;
  return a.kind_ != Bound::Kind::Finite || a.value_ == b.value_;
}

std::strong_ordering operator<=>(const Bound& a, const Bound& b) {
  auto rank = [](Bound::Kind k) {
    return k == Bound::Kind::NegInf ? 0 : (k == Bound::Kind::Finite ? 1 : 2);
  };
  if (a.kind_ != b.kind_) return rank(a.kind_) <=> rank(b.kind_);
  if (a.kind_ != Bound::Kind::Finite) return std::strong_ordering::equal;
  if (a.value_ < b.value_) return std::strong_ordering::less;
  if (a.value_ > b.value_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Bound operator+(const Bound& a, const Bound& b) {
  if (a.isFinite() && b.isFinite()) return Bound(a.value() + b.value());
  if ((a.isPosInf() && b.isNegInf()) || (a.isNegInf() && b.isPosInf())) {
    throw std::logic_error("adding opposite infinities");
  }
  return a.isFinite() ? b : a;
}

Bound operator-(const Bound& a) {
  if (a.isPosInf()) return Bound::negInf();
  if (a.isNegInf()) return Bound::posInf();
  return Bound(Integer(-a.value()));
}

Bound operator-(const Bound& a, const Bound& b) { return a + (-b); }

Bound operator*(const Bound& a, const Bound& b) {
  if (a.isFinite() && b.isFinite()) return Bound(a.value() * b.value());
  int s = a.sign() * b.sign();
  if (s == 0) return Bound(0);
  return s > 0 ? Bound::posInf() : Bound::negInf();
}

const Bound& min(const Bound& a, const Bound& b) { return b < a ? b : a; }
const Bound& max(const Bound& a, const Bound& b) { return a < b ? b : a; }

}  // namespace loopcount
