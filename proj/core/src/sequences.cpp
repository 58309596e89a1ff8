#include "multinacci/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "multinacci/errors.hpp"
#include "multinacci/parallel.hpp"

namespace multinacci::sequences {

void RecurrenceSpec::validate() const {
    if (order < 2) {
        throw ValidationError("order",
                              "must be at least 2 (order 1 is the constant sequence)");
    }
    if (!initial_values.empty()) {
        if (static_cast<int>(initial_values.size()) != order) {
            throw ValidationError("initial_values",
                                  "expected exactly " + std::to_string(order) + " entries, got " +
                                      std::to_string(initial_values.size()));
        }
        bool all_zero = true;
        for (const BigInt& v : initial_values) {
            if (v < 0) throw ValidationError("initial_values", "entries must be nonnegative");
            if (v != 0) all_zero = false;
        }
        if (all_zero) throw ValidationError("initial_values", "must not be all zero");
    }
    if (term_count < order + 2) {
        throw ValidationError("term_count", "must be at least order + 2 so a ratio exists");
    }
}

std::vector<BigInt> RecurrenceSpec::effective_initial_values() const {
    if (!initial_values.empty()) return initial_values;
    return std::vector<BigInt>(static_cast<std::size_t>(order), BigInt(1));
}

BigSequence generate_sequence(const RecurrenceSpec& spec) {
    spec.validate();
    const int m = spec.order;
    const int n = spec.term_count;

    std::vector<BigInt> terms = spec.effective_initial_values();
    terms.reserve(static_cast<std::size_t>(n));

    // Running window sum: add the new term, drop the one falling out.
    BigInt window = 0;
    for (const BigInt& v : terms) window += v;
    for (int i = m; i < n; ++i) {
        terms.push_back(window);
        window += terms.back();
        window -= terms[static_cast<std::size_t>(i - m)];
    }
    return BigSequence{spec, std::move(terms)};
}

PhiValue phi(int order, int term_count, int digits) {
    if (digits < 6) throw ValidationError("digits", "must be at least 6");
    if (digits > kMaxDigits) {
        throw ValidationError("digits",
                              "exceeds configured maximum of " + std::to_string(kMaxDigits));
    }
    RecurrenceSpec spec{order, {}, term_count};
    BigSequence seq = generate_sequence(spec);
    const auto n = seq.terms.size();
    Decimal value = Decimal::from_ratio(seq.terms[n - 2], seq.terms[n - 1], digits);
    return PhiValue{order, std::move(value), digits, term_count};
}

std::vector<PhiValue> phi_scan(int max_order, int term_count, int digits, int threads) {
    if (max_order < 2) throw ValidationError("max_order", "must be at least 2");
    std::vector<PhiValue> out(static_cast<std::size_t>(max_order - 1));
    detail::parallel_for(out.size(), threads, [&](std::size_t i) {
        out[i] = phi(static_cast<int>(i) + 2, term_count, digits);
    });
    return out;
}

DifferenceSequence difference_sequence(std::span<const PhiValue> phis) {
    if (phis.size() < 2) {
        throw ValidationError("phis", "need at least two values to difference");
    }
    DifferenceSequence diffs;
    diffs.entries.reserve(phis.size() - 1);
    for (std::size_t i = 0; i + 1 < phis.size(); ++i) {
        if (phis[i + 1].order <= phis[i].order) {
            throw ValidationError("phis", "orders must be strictly ascending without duplicates");
        }
        Decimal d = phis[i].value - phis[i + 1].value;
        if (d.is_zero() || d.is_negative()) {
            throw ValidationError(
                "phis", "values must decrease strictly; increase digits to separate order " +
                            std::to_string(phis[i].order) + " from " +
                            std::to_string(phis[i + 1].order));
        }
        diffs.entries.push_back(DifferenceEntry{phis[i].paper_k(), phis[i].order, std::move(d)});
    }
    return diffs;
}

ConvergenceScan convergence_scan(double tolerance, int max_order, int term_count, int digits,
                                 int threads) {
    if (!(tolerance > 0.0) || !std::isfinite(tolerance)) {
        throw ValidationError("tolerance", "must be a positive finite number");
    }
    ConvergenceScan scan;
    scan.tolerance = tolerance;
    scan.phis = phi_scan(max_order, term_count, digits, threads);
    const Decimal half = Decimal::parse("0.5");
    for (const PhiValue& p : scan.phis) {
        if ((p.value - half).abs().to_double() < tolerance) {
            scan.order = p.order;
            break;
        }
    }
    scan.differences = difference_sequence(scan.phis);
    return scan;
}

}  // namespace multinacci::sequences
