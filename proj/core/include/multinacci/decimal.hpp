#pragma once

#include <compare>
#include <string>
#include <string_view>

#include "multinacci/bigint.hpp"

namespace multinacci {

/// Exact base-10 fixed-point value: mantissa * 10^-scale.
///
/// Ratio tables have to be byte-stable across platforms, so ratios are formed
/// by scaled integer division with guard digits and rounded half-even once, at
/// the requested precision. Subtraction and comparison are exact at the wider
/// of the two scales; nothing here ever rounds implicitly.
class Decimal {
public:
    Decimal() = default;
    Decimal(BigInt mantissa, int scale);

    /// num/den carried to `digits + guard_digits` decimal places, then rounded
    /// half-even to `digits`. den must be nonzero.
    static Decimal from_ratio(const BigInt& num, const BigInt& den, int digits,
                              int guard_digits = 5);

    /// Accepts [+-]ddd[.ddd][(e|E)[+-]ddd]. Throws ValidationError otherwise.
    static Decimal parse(std::string_view text);

    const BigInt& mantissa() const noexcept { return mantissa_; }
    int scale() const noexcept { return scale_; }
    bool is_zero() const noexcept { return mantissa_ == 0; }
    bool is_negative() const noexcept { return mantissa_ < 0; }

    Decimal operator-(const Decimal& other) const;
    Decimal abs() const;

    bool operator==(const Decimal& other) const { return compare(other) == 0; }
    std::strong_ordering operator<=>(const Decimal& other) const {
        int c = compare(other);
        return c < 0 ? std::strong_ordering::less
                     : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }

    /// Round half-even to `places` decimal places (places >= 0).
    Decimal rounded_to_places(int places) const;

    /// Round half-even to `significant` significant digits.
    Decimal rounded_to_significant(int significant) const;

    /// Plain decimal string at full scale, trailing zeros preserved
    /// ("0.618034" at scale 6, "0.500000" likewise).
    std::string str() const;

    /// Display form used by the ratio tables: round to `significant` digits,
    /// then trim trailing fractional zeros ("0.51879", "0.5").
    std::string display(int significant = 6) const;

    double to_double() const;

private:
    int compare(const Decimal& other) const;

    BigInt mantissa_ = 0;
    int scale_ = 0;
};

}  // namespace multinacci
