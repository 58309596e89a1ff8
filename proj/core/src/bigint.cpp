#include "multinacci/bigint.hpp"

#include <stdexcept>

namespace multinacci {

BigInt pow10(int n) {
    if (n < 0) throw std::logic_error("pow10: negative exponent");
    BigInt r = 1;
    BigInt base = 10;
    while (n > 0) {
        if (n & 1) r *= base;
        base *= base;
        n >>= 1;
    }
    return r;
}

int decimal_digits(const BigInt& value) {
    if (value == 0) return 1;
    BigInt v = value < 0 ? BigInt(-value) : value;
    int digits = 0;
    while (v != 0) {
        v /= 10;
        ++digits;
    }
    return digits;
}

}  // namespace multinacci
