#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace loopcount {

/// Arbitrary-precision signed integer used by every analysis.
using Integer = boost::multiprecision::cpp_int;

// C semantics: quotient truncates toward zero, remainder takes the sign of
// the dividend. Divisor must be non-zero.
Integer truncDiv(const Integer& a, const Integer& b);
Integer truncMod(const Integer& a, const Integer& b);

Integer floorDiv(const Integer& a, const Integer& b);
Integer ceilDiv(const Integer& a, const Integer& b);

/// Mathematical modulus in [0, |m|).
Integer floorMod(const Integer& a, const Integer& m);

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);
Integer abs(const Integer& a);
int sign(const Integer& a);

std::string toString(const Integer& value);

/// Parses an optionally signed decimal literal; throws std::invalid_argument.
Integer parseInteger(std::string_view text);

}  // namespace loopcount
