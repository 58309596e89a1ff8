#pragma once

#include <optional>
#include <span>
#include <vector>

#include "multinacci/bigint.hpp"
#include "multinacci/decimal.hpp"

namespace multinacci::sequences {

/// Hard cap on requested ratio precision.
inline constexpr int kMaxDigits = 4096;
/// Default number of generated terms.
inline constexpr int kDefaultTerms = 100;
/// Default ratio precision (decimal places). Wide enough that difference
/// tables stay strictly positive far past the 6-digit display horizon.
inline constexpr int kDefaultDigits = 30;

/// Order-m additive recurrence: each term is the sum of its m predecessors.
/// `order` m is the canonical parameter; published tables index the same family
/// by k = m - 1, exposed as paper_k on the derived values.
struct RecurrenceSpec {
    int order = 2;
    std::vector<BigInt> initial_values;  // empty means all ones
    int term_count = kDefaultTerms;

    /// Throws ValidationError naming the offending field.
    void validate() const;

    /// initial_values with the all-ones default applied.
    std::vector<BigInt> effective_initial_values() const;
};

struct BigSequence {
    RecurrenceSpec spec;
    std::vector<BigInt> terms;
};

/// Inverse ratio terms[N-2]/terms[N-1] of the order-m sequence, rounded
/// half-even to `digits` decimal places.
///
/// The ratio of the last two computed terms stands in for the limit; the
/// truncation error is bounded by (|r2|/r1)^N where r1 is the dominant
/// recurrence root and r2 the second-largest. That quotient is at most ~1/2
/// across this family, so 100 terms put the error near 1e-30.
struct PhiValue {
    int order = 0;
    Decimal value;
    int digits = 0;
    int terms_used = 0;

    int paper_k() const noexcept { return order - 1; }
};

/// One row of the consecutive-difference table: phi(order m) - phi(order m+1),
/// indexed by the left element's paper k. Positive throughout the computed
/// range; the inverse ratios decrease strictly in m.
struct DifferenceEntry {
    int paper_k = 0;
    int order = 0;
    Decimal value;
};

struct DifferenceSequence {
    std::vector<DifferenceEntry> entries;
};

struct ConvergenceScan {
    std::optional<int> order;  // first order with |phi - 1/2| < tolerance
    double tolerance = 0.0;
    std::vector<PhiValue> phis;
    DifferenceSequence differences;
};

/// Exact integer generation of all spec.term_count terms.
BigSequence generate_sequence(const RecurrenceSpec& spec);

/// phi for the all-ones order-m sequence. Requires order >= 2,
/// term_count >= order + 2, 6 <= digits <= kMaxDigits.
PhiValue phi(int order, int term_count = kDefaultTerms, int digits = kDefaultDigits);

/// phi for every order in [2, max_order], ascending. Orders are independent;
/// `threads` > 1 computes them in parallel with deterministic output order.
std::vector<PhiValue> phi_scan(int max_order, int term_count = kDefaultTerms,
                               int digits = kDefaultDigits, int threads = 1);

/// Differences of consecutive entries. Requires strictly ascending orders and
/// strictly decreasing values (i.e. enough digits to separate them).
DifferenceSequence difference_sequence(std::span<const PhiValue> phis);

/// Smallest order whose phi lies within `tolerance` of 1/2, plus the full
/// scan and difference table behind the decision. No qualifying order is a
/// reported outcome, not an error.
ConvergenceScan convergence_scan(double tolerance, int max_order,
                                 int term_count = kDefaultTerms,
                                 int digits = kDefaultDigits, int threads = 1);

}  // namespace multinacci::sequences
