#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "multinacci/spectra.hpp"

namespace multinacci::fractals {

inline constexpr int kDefaultMaxIterations = 1000;
inline constexpr double kDefaultBailout = 2.0;
/// render_grid memory budget, in pixels (64 Mi ints = 256 MiB).
inline constexpr std::size_t kMaxGridPixels = std::size_t(1) << 26;

/// One run of z <- z^2 + c.
struct QuadraticParams {
    std::complex<double> c{0.0, 0.0};
    std::complex<double> z0{0.0, 0.0};
    int max_iterations = kDefaultMaxIterations;
    double bailout = kDefaultBailout;
    /// Accelerator: when the orbit revisits a state exactly (Brent probing),
    /// skip ahead along the detected cycle instead of running out the budget.
    /// An exact revisit pins the whole future, so the result is bit-identical
    /// to the plain run; only the time spent changes.
    bool cycle_detection = false;

    void validate() const;
};

/// iterations = number of map applications performed when the bailout was
/// first exceeded, or max_iterations + 1 when the orbit never bailed out
/// (the "1000+1" membership encoding at the default budget).
struct EscapeResult {
    int iterations = 0;
    bool escaped = false;
    double final_modulus = 0.0;
};

/// Target set for classification: the Mandelbrot parameter set, or the filled
/// Julia set of z^2 + c for a fixed c. The escape test detects the filled set
/// (non-escaping initial points); the Julia set proper is its boundary.
struct SetSpec {
    enum class Kind { mandelbrot, julia };

    Kind kind = Kind::mandelbrot;
    std::complex<double> c{0.0, 0.0};  // used by julia only
    int max_iterations = kDefaultMaxIterations;
    double bailout = kDefaultBailout;
    bool cycle_detection = false;

    static SetSpec mandelbrot(int max_iterations = kDefaultMaxIterations);
    static SetSpec julia(std::complex<double> c, int max_iterations = kDefaultMaxIterations);

    std::string name() const;  // "mandelbrot", "julia(-2)", "julia(-1+0.3i)"
};

/// Closed-form verdict attached where one exists: the filled Julia set of
/// z^2 - 2 is exactly the real segment [-2, 2], and the real slice of the
/// Mandelbrot set is exactly [-2, 1/4]. Points too close to a boundary for a
/// finite-budget test to be trusted are marked suspect instead.
enum class OracleVerdict { none, member, non_member, boundary_suspect };

const char* to_string(OracleVerdict v);

struct PointRecord {
    spectra::PhiPoint point;
    std::string set;
    EscapeResult escape;
    bool member = false;
    OracleVerdict oracle = OracleVerdict::none;
};

struct SetSummary {
    std::string set;
    int members = 0;
    int non_members = 0;
    int boundary_suspects = 0;
    int oracle_disagreements = 0;
};

struct MembershipReport {
    std::vector<PointRecord> records;
    std::vector<SetSummary> summaries;
    int total_points = 0;
};

EscapeResult escape_iterate(const QuadraticParams& params);

/// Membership of c in the Mandelbrot set at the given budget: the orbit of 0
/// has not escaped. Finite-budget membership over-approximates the true set.
struct MandelbrotResult {
    bool member = false;
    EscapeResult escape;
};
MandelbrotResult mandelbrot_member(std::complex<double> c,
                                   int max_iterations = kDefaultMaxIterations);

int julia_iteration_count(std::complex<double> c, std::complex<double> z0,
                          int max_iterations = kDefaultMaxIterations);

/// One record per (point, set), points in input order per set. Oracle verdicts
/// attached for julia(-2) and for real Mandelbrot parameters.
MembershipReport classify_points(std::span<const spectra::PhiPoint> points,
                                 std::span<const SetSpec> sets, int threads = 1);

/// Axis-aligned raster over the complex plane. Pixel (col, row) is row-major
/// with the top-left corner at (center.re - width/2, center.im + height/2);
/// samples are taken at pixel centers.
struct GridSpec {
    std::complex<double> center{0.0, 0.0};
    double width = 4.0;
    double height = 4.0;
    int columns = 0;
    int rows = 0;
    SetSpec set;

    void validate() const;
    std::complex<double> pixel_center(int col, int row) const;
};

struct IterationGrid {
    int columns = 0;
    int rows = 0;
    int max_iterations = 0;
    std::vector<int> counts;  // row-major

    int at(int col, int row) const {
        return counts[static_cast<std::size_t>(row) * columns + col];
    }
};

IterationGrid render_grid(const GridSpec& spec, int threads = 1);

}  // namespace multinacci::fractals
