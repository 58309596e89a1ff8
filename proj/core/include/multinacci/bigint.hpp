#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace multinacci {

/// Arbitrary-precision signed integer. Sequence terms overflow 64 bits well
/// before 100 terms at higher orders, so everything term-related runs on this.
using BigInt = boost::multiprecision::cpp_int;

/// 10^n for n >= 0.
BigInt pow10(int n);

/// Number of decimal digits of |value| (0 has one digit).
int decimal_digits(const BigInt& value);

}  // namespace multinacci
