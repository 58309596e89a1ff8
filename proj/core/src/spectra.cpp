#include "multinacci/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "multinacci/errors.hpp"

namespace multinacci::spectra {
namespace {

constexpr double kRealSnapTolerance = 1e-9;

// ---- double-double helpers for the compensated polish ----------------------

struct DD {
    double hi = 0.0;
    double lo = 0.0;
};

DD two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

DD two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

DD dd_add(DD a, DD b) {
    DD s = two_sum(a.hi, b.hi);
    double lo = s.lo + a.lo + b.lo;
    DD r = two_sum(s.hi, lo);
    return r;
}

DD dd_add(DD a, double b) { return dd_add(a, DD{b, 0.0}); }

DD dd_mul(DD a, DD b) {
    DD p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return two_sum(p.hi, p.lo);
}

struct DDComplex {
    DD re;
    DD im;
};

DDComplex ddc_mul(DDComplex a, DDComplex b) {
    DD neg_im = {-a.im.hi, -a.im.lo};
    DD re = dd_add(dd_mul(a.re, b.re), dd_mul(neg_im, b.im));
    DD im = dd_add(dd_mul(a.re, b.im), dd_mul(a.im, b.re));
    return {re, im};
}

DDComplex ddc_add_double(DDComplex a, double re) {
    return {dd_add(a.re, re), a.im};
}

// p(z) with the working value carried in double-double components. The
// coefficients are exactly representable (+1 leading, -1 elsewhere).
std::complex<double> compensated_eval(const CharacteristicPolynomial& poly,
                                      std::complex<double> z) {
    DDComplex zz{{z.real(), 0.0}, {z.imag(), 0.0}};
    DDComplex acc{{poly.coefficients.back(), 0.0}, {0.0, 0.0}};
    for (int i = poly.order - 1; i >= 0; --i) {
        acc = ddc_mul(acc, zz);
        acc = ddc_add_double(acc, poly.coefficients[static_cast<std::size_t>(i)]);
    }
    return {acc.re.hi + acc.re.lo, acc.im.hi + acc.im.lo};
}

// ---- canonical ordering -----------------------------------------------------

void sort_canonical(std::vector<std::complex<double>>& roots) {
    std::stable_sort(roots.begin(), roots.end(),
                     [](const std::complex<double>& a, const std::complex<double>& b) {
                         double ma = std::abs(a);
                         double mb = std::abs(b);
                         if (ma != mb) return ma > mb;
                         return std::arg(a) < std::arg(b);
                     });
}

// Snap near-real roots onto the axis and re-polish there, then rebuild the
// non-real roots as exact conjugate pairs. Real outputs must be exactly real:
// a stray 1e-16 imaginary part grows multiplicatively under the quadratic
// iteration downstream and flips escape verdicts.
void canonicalize(const CharacteristicPolynomial& poly,
                  std::vector<std::complex<double>>& roots) {
    for (auto& r : roots) {
        if (r.imag() != 0.0 && std::abs(r.imag()) <= kRealSnapTolerance) {
            double x = r.real();
            for (int i = 0; i < 2; ++i) {
                double p = poly.eval({x, 0.0}).real();
                double dp = poly.eval_derivative({x, 0.0}).real();
                if (dp != 0.0) x -= p / dp;
            }
            r = {x, 0.0};
        }
    }
    std::vector<std::complex<double>> upper;
    std::vector<std::complex<double>> lower;
    for (const auto& r : roots) {
        if (r.imag() > 0.0) upper.push_back(r);
        else if (r.imag() < 0.0) lower.push_back(r);
    }
    if (upper.size() != lower.size()) return;  // leave as computed; tests flag it
    auto by_re = [](const std::complex<double>& a, const std::complex<double>& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return std::abs(a.imag()) < std::abs(b.imag());
    };
    std::sort(upper.begin(), upper.end(), by_re);
    std::sort(lower.begin(), lower.end(), by_re);

    std::vector<std::complex<double>> paired(upper.size());
    for (std::size_t i = 0; i < upper.size(); ++i) {
        double re = 0.5 * (upper[i].real() + lower[i].real());
        double im = 0.5 * (upper[i].imag() - lower[i].imag());
        paired[i] = {re, im};
    }
    std::size_t next_upper = 0;
    std::size_t next_lower = 0;
    for (auto& r : roots) {
        if (r.imag() > 0.0) r = paired[next_upper++];
        else if (r.imag() < 0.0) r = std::conj(paired[next_lower++]);
    }
}

}  // namespace

std::complex<double> CharacteristicPolynomial::eval(std::complex<double> x) const {
    std::complex<double> acc = coefficients.back();
    for (int i = order - 1; i >= 0; --i) {
        acc = acc * x + coefficients[static_cast<std::size_t>(i)];
    }
    return acc;
}

std::complex<double> CharacteristicPolynomial::eval_derivative(std::complex<double> x) const {
    std::complex<double> acc = static_cast<double>(order) * coefficients.back();
    for (int i = order - 1; i >= 1; --i) {
        acc = acc * x + static_cast<double>(i) * coefficients[static_cast<std::size_t>(i)];
    }
    return acc;
}

CompanionMatrix build_companion(int order, int max_order) {
    if (order < 2) throw ValidationError("order", "must be at least 2");
    if (order > max_order) {
        throw ValidationError("order", "exceeds configured maximum of " +
                                           std::to_string(max_order));
    }
    CompanionMatrix m;
    m.order = order;
    m.entries.assign(static_cast<std::size_t>(order) * order, 0);
    for (int j = 0; j < order; ++j) m.entries[static_cast<std::size_t>(j)] = 1;
    for (int j = 0; j + 1 < order; ++j) {
        m.entries[static_cast<std::size_t>(j + 1) * order + j] = 1;
    }
    return m;
}

CharacteristicPolynomial characteristic_polynomial(int order) {
    if (order < 2) throw ValidationError("order", "must be at least 2");
    CharacteristicPolynomial p;
    p.order = order;
    p.coefficients.assign(static_cast<std::size_t>(order) + 1, -1.0);
    p.coefficients.back() = 1.0;
    return p;
}

EigenvalueSet eigenvalues(int order, const SolverConfig& config) {
    build_companion(order, config.max_order);  // range check against the same cap
    if (!(config.residual_tolerance > 0.0)) {
        throw ValidationError("residual_tolerance", "must be positive");
    }
    const CharacteristicPolynomial poly = characteristic_polynomial(order);
    const int m = order;

    // Classic seeds (0.4 + 0.9i)^j scaled by the Cauchy root bound, which is
    // 1 + max|a_i| = 2 for this family.
    std::vector<std::complex<double>> roots(static_cast<std::size_t>(m));
    const std::complex<double> base(0.4, 0.9);
    std::complex<double> power(1.0, 0.0);
    for (auto& r : roots) {
        r = 2.0 * power;
        power *= base;
    }

    int iterations = 0;
    bool converged = false;
    for (; iterations < config.max_iterations; ++iterations) {
        double max_step = 0.0;
        for (int i = 0; i < m; ++i) {
            std::complex<double> denom(1.0, 0.0);
            for (int j = 0; j < m; ++j) {
                if (i != j) denom *= roots[static_cast<std::size_t>(i)] -
                                     roots[static_cast<std::size_t>(j)];
            }
            std::complex<double> delta =
                poly.eval(roots[static_cast<std::size_t>(i)]) / denom;
            roots[static_cast<std::size_t>(i)] -= delta;
            max_step = std::max(max_step, std::abs(delta));
        }
        if (max_step < config.step_tolerance) {
            converged = true;
            ++iterations;
            break;
        }
    }

    // Backward-error residual: |p(z)| normalized by sum_i |a_i||z|^i. The raw
    // value |p(z)| is steepness-limited at the dominant root (|p'(2)| = 2^m - 1,
    // so even the closest double sits ~2^m ulps of 1 away from zero); the
    // normalized form measures root quality independent of scale.
    auto residuals_of = [&](const std::vector<std::complex<double>>& rs) {
        std::vector<double> out(rs.size());
        for (std::size_t i = 0; i < rs.size(); ++i) {
            const double mag = std::abs(rs[i]);
            double denom = 1.0;
            for (int k = 0; k < m; ++k) denom = denom * mag + 1.0;
            out[i] = std::abs(poly.eval(rs[i])) / denom;
        }
        return out;
    };

    if (!converged) {
        throw ConvergenceError("eigenvalues: simultaneous iteration did not converge for order " +
                                   std::to_string(order) + " within " +
                                   std::to_string(config.max_iterations) + " iterations",
                               residuals_of(roots));
    }

    const bool compensate = config.compensated_polish && order > 16;
    for (auto& r : roots) {
        for (int s = 0; s < config.newton_polish_steps; ++s) {
            std::complex<double> p = compensate ? compensated_eval(poly, r) : poly.eval(r);
            std::complex<double> dp = poly.eval_derivative(r);
            if (dp == std::complex<double>(0.0, 0.0)) break;
            r -= p / dp;
        }
    }

    canonicalize(poly, roots);
    sort_canonical(roots);

    EigenvalueSet set;
    set.order = order;
    set.roots = std::move(roots);
    set.residuals = residuals_of(set.roots);
    set.iterations_used = iterations;

    for (double r : set.residuals) {
        if (!(r < config.residual_tolerance)) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.3e", r);
            throw ConvergenceError("eigenvalues: residual " + std::string(buf) +
                                       " above tolerance for order " + std::to_string(order),
                                   set.residuals);
        }
    }
    return set;
}

std::vector<PhiPoint> phi_points(int first_order, int last_order, const SolverConfig& config) {
    if (first_order < 2) throw ValidationError("orders", "must start at 2 or above");
    if (last_order < first_order) {
        throw ValidationError("orders", "range end must not precede range start");
    }
    if (last_order > config.max_order) {
        throw ValidationError("orders", "range end exceeds configured maximum of " +
                                            std::to_string(config.max_order));
    }
    std::vector<PhiPoint> points;
    for (int m = first_order; m <= last_order; ++m) {
        EigenvalueSet set = eigenvalues(m, config);
        for (int n = 1; n <= m; ++n) {
            const std::complex<double>& lambda = set.roots[static_cast<std::size_t>(n - 1)];
            std::complex<double> value = lambda.imag() == 0.0
                                             ? std::complex<double>(1.0 / lambda.real(), 0.0)
                                             : 1.0 / lambda;
            points.push_back(PhiPoint{m - 1, n, value, lambda,
                                      set.residuals[static_cast<std::size_t>(n - 1)]});
        }
    }
    return points;
}

}  // namespace multinacci::spectra
