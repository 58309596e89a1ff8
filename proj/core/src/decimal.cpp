#include "multinacci/decimal.hpp"

#include <cctype>
#include <cstdlib>
#include <utility>

#include "multinacci/errors.hpp"

namespace multinacci {

Decimal::Decimal(BigInt mantissa, int scale) : mantissa_(std::move(mantissa)), scale_(scale) {
    if (scale < 0) throw std::logic_error("Decimal: negative scale");
}

Decimal Decimal::from_ratio(const BigInt& num, const BigInt& den, int digits, int guard_digits) {
    if (den == 0) throw ValidationError("denominator", "must be nonzero");
    if (digits < 0) throw ValidationError("digits", "must be nonnegative");
    if (guard_digits < 1) throw ValidationError("guard_digits", "must be at least 1");

    const bool negative = (num < 0) != (den < 0);
    BigInt n = num < 0 ? BigInt(-num) : num;
    BigInt d = den < 0 ? BigInt(-den) : den;
    BigInt scaled = n * pow10(digits + guard_digits) / d;  // truncated
    if (negative) scaled = -scaled;
    return Decimal(std::move(scaled), digits + guard_digits).rounded_to_places(digits);
}

Decimal Decimal::parse(std::string_view text) {
    std::size_t pos = 0;
    auto fail = [&](const char* why) -> Decimal {
        throw ValidationError("decimal", std::string(why) + ": '" + std::string(text) + "'");
    };

    bool negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        negative = text[pos] == '-';
        ++pos;
    }

    BigInt mantissa = 0;
    int frac_digits = 0;
    bool seen_digit = false;
    bool in_fraction = false;
    for (; pos < text.size(); ++pos) {
        char c = text[pos];
        if (c == '.') {
            if (in_fraction) return fail("second decimal point");
            in_fraction = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            mantissa = mantissa * 10 + (c - '0');
            if (in_fraction) ++frac_digits;
            seen_digit = true;
        } else {
            break;
        }
    }
    if (!seen_digit) return fail("no digits");

    int exponent = 0;
    if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
        ++pos;
        bool exp_negative = false;
        if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
            exp_negative = text[pos] == '-';
            ++pos;
        }
        if (pos == text.size()) return fail("empty exponent");
        for (; pos < text.size(); ++pos) {
            if (!std::isdigit(static_cast<unsigned char>(text[pos]))) return fail("bad exponent");
            exponent = exponent * 10 + (text[pos] - '0');
            if (exponent > 1'000'000) return fail("exponent out of range");
        }
        if (exp_negative) exponent = -exponent;
    }
    if (pos != text.size()) return fail("trailing characters");

    int scale = frac_digits - exponent;
    if (scale < 0) {
        mantissa *= pow10(-scale);
        scale = 0;
    }
    if (negative) mantissa = -mantissa;
    return Decimal(std::move(mantissa), scale);
}

Decimal Decimal::operator-(const Decimal& other) const {
    int scale = std::max(scale_, other.scale_);
    BigInt lhs = mantissa_ * pow10(scale - scale_);
    BigInt rhs = other.mantissa_ * pow10(scale - other.scale_);
    return Decimal(lhs - rhs, scale);
}

Decimal Decimal::abs() const {
    return mantissa_ < 0 ? Decimal(-mantissa_, scale_) : *this;
}

int Decimal::compare(const Decimal& other) const {
    int scale = std::max(scale_, other.scale_);
    BigInt lhs = mantissa_ * pow10(scale - scale_);
    BigInt rhs = other.mantissa_ * pow10(scale - other.scale_);
    return lhs < rhs ? -1 : lhs > rhs ? 1 : 0;
}

Decimal Decimal::rounded_to_places(int places) const {
    if (places < 0) throw ValidationError("places", "must be nonnegative");
    if (places >= scale_) {
        return Decimal(mantissa_ * pow10(places - scale_), places);
    }
    const bool negative = mantissa_ < 0;
    BigInt m = negative ? BigInt(-mantissa_) : mantissa_;
    BigInt divisor = pow10(scale_ - places);
    BigInt q = m / divisor;
    BigInt r = m % divisor;
    BigInt half = divisor / 2;
    if (r > half || (r == half && (q & 1) != 0)) ++q;
    if (negative) q = -q;
    return Decimal(std::move(q), places);
}

Decimal Decimal::rounded_to_significant(int significant) const {
    if (significant < 1) throw ValidationError("significant", "must be positive");
    if (mantissa_ == 0) return Decimal(0, 0);
    int len = decimal_digits(mantissa_);
    if (len <= significant) return *this;
    int places = scale_ - (len - significant);
    if (places >= 0) return rounded_to_places(places);
    // Magnitude exceeds 10^significant: round into the integer part.
    Decimal r = rounded_to_places(0);
    const bool negative = r.mantissa_ < 0;
    BigInt m = negative ? BigInt(-r.mantissa_) : r.mantissa_;
    int ilen = decimal_digits(m);
    if (ilen > significant) {
        BigInt divisor = pow10(ilen - significant);
        BigInt q = m / divisor;
        BigInt rem = m % divisor;
        BigInt half = divisor / 2;
        if (rem > half || (rem == half && (q & 1) != 0)) ++q;
        m = q * divisor;
    }
    return Decimal(negative ? BigInt(-m) : m, 0);
}

std::string Decimal::str() const {
    const bool negative = mantissa_ < 0;
    BigInt m = negative ? BigInt(-mantissa_) : mantissa_;
    std::string digits = m.str();
    std::string out;
    if (scale_ == 0) {
        out = digits;
    } else if (static_cast<int>(digits.size()) <= scale_) {
        out = "0." + std::string(scale_ - digits.size(), '0') + digits;
    } else {
        out = digits.substr(0, digits.size() - scale_) + "." +
              digits.substr(digits.size() - scale_);
    }
    if (negative && m != 0) out.insert(out.begin(), '-');
    return out;
}

std::string Decimal::display(int significant) const {
    std::string s = rounded_to_significant(significant).str();
    if (s.find('.') != std::string::npos) {
        std::size_t last = s.find_last_not_of('0');
        if (s[last] == '.') --last;
        s.erase(last + 1);
    }
    return s;
}

double Decimal::to_double() const {
    return std::strtod(str().c_str(), nullptr);
}

}  // namespace multinacci
