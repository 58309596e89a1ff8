#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace multinacci::spectra {

/// Default ceiling on the companion-matrix order.
inline constexpr int kDefaultMaxOrder = 20;

/// m x m 0/1 matrix of the order-m recurrence: first row all ones, ones on the
/// subdiagonal, zeros elsewhere. Its characteristic polynomial is
/// x^m - x^(m-1) - ... - x - 1 and its dominant eigenvalue is the sequence
/// growth rate.
struct CompanionMatrix {
    int order = 0;
    std::vector<std::uint8_t> entries;  // row-major

    std::uint8_t at(int row, int col) const {
        return entries[static_cast<std::size_t>(row) * order + col];
    }
};

/// Coefficients of x^m - x^(m-1) - ... - x - 1, stored ascending by power
/// (index 0 is the constant term -1, index m the leading +1).
struct CharacteristicPolynomial {
    int order = 0;
    std::vector<double> coefficients;

    std::complex<double> eval(std::complex<double> x) const;
    std::complex<double> eval_derivative(std::complex<double> x) const;
};

struct SolverConfig {
    double residual_tolerance = 1e-12;
    double step_tolerance = 1e-14;
    int max_iterations = 500;
    int newton_polish_steps = 3;
    /// Compensated (double-double) Horner inside the Newton polish. Off by
    /// default; worth enabling above order 16 where roots crowd the unit
    /// circle.
    bool compensated_polish = false;
    int max_order = kDefaultMaxOrder;
};

/// All m roots of the order-m characteristic polynomial, sorted by descending
/// modulus, then ascending principal argument. Exactly one root lies outside
/// the unit circle (the family is Pisot); near-real roots are snapped onto the
/// real axis and complex roots come in exactly conjugate pairs.
struct EigenvalueSet {
    int order = 0;
    std::vector<std::complex<double>> roots;
    /// Backward-error residuals: |p(root)| / sum_i |root|^i per root.
    std::vector<double> residuals;
    int iterations_used = 0;
};

/// One inverse eigenvalue 1/lambda with its provenance: paper_k = order - 1
/// and n = 1-based index into the sorted root list.
struct PhiPoint {
    int paper_k = 0;
    int n = 0;
    std::complex<double> value;
    std::complex<double> source_root;
    double residual = 0.0;

    int order() const noexcept { return paper_k + 1; }
    bool is_real() const noexcept { return value.imag() == 0.0; }
};

/// Throws ValidationError unless 2 <= order <= max_order.
CompanionMatrix build_companion(int order, int max_order = kDefaultMaxOrder);

CharacteristicPolynomial characteristic_polynomial(int order);

/// Simultaneous (Durand-Kerner) iteration from the classic seeds scaled by the
/// Cauchy bound, Newton polish, deterministic canonical ordering. Throws
/// ConvergenceError (carrying residuals) if the step criterion or the residual
/// tolerance cannot be met within config.max_iterations.
EigenvalueSet eigenvalues(int order, const SolverConfig& config = {});

/// Inverse eigenvalues for every order in [first_order, last_order].
std::vector<PhiPoint> phi_points(int first_order, int last_order,
                                 const SolverConfig& config = {});

}  // namespace multinacci::spectra
