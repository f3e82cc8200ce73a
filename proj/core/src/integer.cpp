#include "loopcount/integer.hpp"

#include <stdexcept>

namespace loopcount {

Integer truncDiv(const Integer& a, const Integer& b) { return a / b; }

Integer truncMod(const Integer& a, const Integer& b) { return a % b; }

Integer floorDiv(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Integer ceilDiv(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) == (b < 0))) ++q;
  return q;
}

Integer floorMod(const Integer& a, const Integer& m) {
  Integer mm = abs(m);
  Integer r = a % mm;
  if (r < 0) r += mm;
  return r;
}

Integer gcd(const Integer& a, const Integer& b) {
  return boost::multiprecision::gcd(abs(a), abs(b));
}

Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return abs(a / gcd(a, b) * b);
}

Integer abs(const Integer& a) { return a < 0 ? Integer(-a) : a; }

int sign(const Integer& a) { return a < 0 ? -1 : (a > 0 ? 1 : 0); }

std::string toString(const Integer& value) { return value.str(); }

Integer parseInteger(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty integer literal");
  std::size_t pos = 0;
  bool negative = false;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    pos = 1;
  }
  if (pos == text.size()) throw std::invalid_argument("malformed integer literal");
  Integer value = 0;
  for (; pos < text.size(); ++pos) {
    char c = text[pos];
    if (c < '0' || c > '9') {
      throw std::invalid_argument("malformed integer literal: " + std::string(text));
    }
    value = value * 10 + (c - '0');
  }
  return negative ? Integer(-value) : value;
}

}  // namespace loopcount
