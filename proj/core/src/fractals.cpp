#include "multinacci/fractals.hpp"

#include <cmath>
#include <sstream>

#include "multinacci/errors.hpp"
#include "multinacci/parallel.hpp"

namespace multinacci::fractals {
namespace {

constexpr double kRealTolerance = 1e-9;        // |im| below this counts as "real"
constexpr double kJuliaEdgeTolerance = 1e-9;   // distance to +-2 treated as boundary
constexpr double kMandelEdgeTolerance = 1e-6;  // distance to -2 / 1/4 treated as boundary

bool finite(std::complex<double> z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

OracleVerdict julia_minus_two_oracle(std::complex<double> z0) {
    const double im = std::abs(z0.imag());
    if (im > kRealTolerance) return OracleVerdict::non_member;
    if (im != 0.0) return OracleVerdict::boundary_suspect;  // budget-sensitive sliver
    const double re = std::abs(z0.real());
    if (std::abs(re - 2.0) <= kJuliaEdgeTolerance) return OracleVerdict::boundary_suspect;
    return re <= 2.0 ? OracleVerdict::member : OracleVerdict::non_member;
}

OracleVerdict mandelbrot_real_axis_oracle(std::complex<double> c) {
    const double im = std::abs(c.imag());
    if (im > kRealTolerance) return OracleVerdict::none;  // no closed form off the axis
    if (im != 0.0) return OracleVerdict::boundary_suspect;
    const double re = c.real();
    if (std::abs(re + 2.0) <= kMandelEdgeTolerance || std::abs(re - 0.25) <= kMandelEdgeTolerance) {
        return OracleVerdict::boundary_suspect;
    }
    return (re >= -2.0 && re <= 0.25) ? OracleVerdict::member : OracleVerdict::non_member;
}

OracleVerdict oracle_for(const SetSpec& set, const spectra::PhiPoint& point) {
    if (set.kind == SetSpec::Kind::julia) {
        if (set.c == std::complex<double>(-2.0, 0.0)) return julia_minus_two_oracle(point.value);
        return OracleVerdict::none;
    }
    return mandelbrot_real_axis_oracle(point.value);
}

std::string format_real(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

}  // namespace

const char* to_string(OracleVerdict v) {
    switch (v) {
        case OracleVerdict::member: return "member";
        case OracleVerdict::non_member: return "non-member";
        case OracleVerdict::boundary_suspect: return "boundary-suspect";
        case OracleVerdict::none: break;
    }
    return "none";
}

void QuadraticParams::validate() const {
    if (!finite(c)) throw ValidationError("c", "must be finite");
    if (!finite(z0)) throw ValidationError("z0", "must be finite");
    if (max_iterations < 1) throw ValidationError("max_iterations", "must be at least 1");
    if (!(bailout >= 2.0) || !std::isfinite(bailout)) {
        throw ValidationError("bailout", "must be >= 2 (escape-radius theorem)");
    }
}

SetSpec SetSpec::mandelbrot(int max_iterations) {
    SetSpec s;
    s.kind = Kind::mandelbrot;
    s.max_iterations = max_iterations;
    return s;
}

SetSpec SetSpec::julia(std::complex<double> c, int max_iterations) {
    SetSpec s;
    s.kind = Kind::julia;
    s.c = c;
    s.max_iterations = max_iterations;
    return s;
}

std::string SetSpec::name() const {
    if (kind == Kind::mandelbrot) return "mandelbrot";
    std::string out = "julia(" + format_real(c.real());
    if (c.imag() != 0.0) {
        out += (c.imag() > 0 ? "+" : "") + format_real(c.imag()) + "i";
    }
    out += ")";
    return out;
}

EscapeResult escape_iterate(const QuadraticParams& params) {
    params.validate();
    const double bail_sq = params.bailout * params.bailout;

    // Real orbits stay exactly real; run them in real arithmetic.
    if (params.z0.imag() == 0.0 && params.c.imag() == 0.0) {
        double x = params.z0.real();
        const double c = params.c.real();
        double anchor = x;  // Brent probe point
        int anchor_at = 0;
        int next_probe = 1;
        for (int i = 1; i <= params.max_iterations; ++i) {
            x = x * x + c;
            if (x * x > bail_sq) return EscapeResult{i, true, std::abs(x)};
            if (params.cycle_detection) {
                if (x == anchor) {
                    // Exact revisit: the orbit is periodic, so skip ahead to
                    // the state the full run would have ended on.
                    const int period = i - anchor_at;
                    for (int r = (params.max_iterations - i) % period; r > 0; --r) {
                        x = x * x + c;
                    }
                    return EscapeResult{params.max_iterations + 1, false, std::abs(x)};
                }
                if (i == next_probe) {
                    anchor = x;
                    anchor_at = i;
                    next_probe *= 2;
                }
            }
        }
        return EscapeResult{params.max_iterations + 1, false, std::abs(x)};
    }

    std::complex<double> z = params.z0;
    std::complex<double> anchor = z;
    int anchor_at = 0;
    int next_probe = 1;
    for (int i = 1; i <= params.max_iterations; ++i) {
        z = z * z + params.c;
        if (std::norm(z) > bail_sq) return EscapeResult{i, true, std::abs(z)};
        if (params.cycle_detection) {
            if (z.real() == anchor.real() && z.imag() == anchor.imag()) {
                const int period = i - anchor_at;
                for (int r = (params.max_iterations - i) % period; r > 0; --r) {
                    z = z * z + params.c;
                }
                return EscapeResult{params.max_iterations + 1, false, std::abs(z)};
            }
            if (i == next_probe) {
                anchor = z;
                anchor_at = i;
                next_probe *= 2;
            }
        }
    }
    return EscapeResult{params.max_iterations + 1, false, std::abs(z)};
}

MandelbrotResult mandelbrot_member(std::complex<double> c, int max_iterations) {
    QuadraticParams p;
    p.c = c;
    p.max_iterations = max_iterations;
    EscapeResult r = escape_iterate(p);
    return MandelbrotResult{!r.escaped, r};
}

int julia_iteration_count(std::complex<double> c, std::complex<double> z0, int max_iterations) {
    QuadraticParams p;
    p.c = c;
    p.z0 = z0;
    p.max_iterations = max_iterations;
    return escape_iterate(p).iterations;
}

MembershipReport classify_points(std::span<const spectra::PhiPoint> points,
                                 std::span<const SetSpec> sets, int threads) {
    if (points.empty()) throw ValidationError("points", "must not be empty");
    if (sets.empty()) throw ValidationError("sets", "must not be empty");

    MembershipReport report;
    report.total_points = static_cast<int>(points.size());
    report.records.resize(points.size() * sets.size());

    for (std::size_t s = 0; s < sets.size(); ++s) {
        const SetSpec& set = sets[s];
        const std::string set_name = set.name();
        detail::parallel_for(points.size(), threads, [&, s](std::size_t i) {
            const spectra::PhiPoint& pt = points[i];
            QuadraticParams params;
            params.max_iterations = set.max_iterations;
            params.bailout = set.bailout;
            params.cycle_detection = set.cycle_detection;
            if (set.kind == SetSpec::Kind::julia) {
                params.c = set.c;
                params.z0 = pt.value;
            } else {
                params.c = pt.value;
            }
            EscapeResult escape = escape_iterate(params);
            PointRecord& rec = report.records[s * points.size() + i];
            rec.point = pt;
            rec.set = set_name;
            rec.escape = escape;
            rec.member = !escape.escaped;
            rec.oracle = oracle_for(set, pt);
        });

        SetSummary summary;
        summary.set = set_name;
        for (std::size_t i = 0; i < points.size(); ++i) {
            const PointRecord& rec = report.records[s * points.size() + i];
            if (rec.member) ++summary.members; else ++summary.non_members;
            if (rec.oracle == OracleVerdict::boundary_suspect) ++summary.boundary_suspects;
            if ((rec.oracle == OracleVerdict::member && !rec.member) ||
                (rec.oracle == OracleVerdict::non_member && rec.member)) {
                ++summary.oracle_disagreements;
            }
        }
        report.summaries.push_back(std::move(summary));
    }
    return report;
}

void GridSpec::validate() const {
    if (!finite(center)) throw ValidationError("center", "must be finite");
    if (!(width > 0.0) || !std::isfinite(width)) {
        throw ValidationError("width", "must be positive");
    }
    if (!(height > 0.0) || !std::isfinite(height)) {
        throw ValidationError("height", "must be positive");
    }
    if (columns < 1) throw ValidationError("columns", "must be at least 1");
    if (rows < 1) throw ValidationError("rows", "must be at least 1");
    const std::size_t pixels = static_cast<std::size_t>(columns) * static_cast<std::size_t>(rows);
    if (pixels > kMaxGridPixels) {
        throw ValidationError("columns*rows", "grid exceeds the configured memory budget");
    }
}

std::complex<double> GridSpec::pixel_center(int col, int row) const {
    const double left = center.real() - width / 2.0;
    const double top = center.imag() + height / 2.0;
    const double dx = width / columns;
    const double dy = height / rows;
    return {left + (col + 0.5) * dx, top - (row + 0.5) * dy};
}

IterationGrid render_grid(const GridSpec& spec, int threads) {
    spec.validate();
    IterationGrid grid;
    grid.columns = spec.columns;
    grid.rows = spec.rows;
    grid.max_iterations = spec.set.max_iterations;
    grid.counts.resize(static_cast<std::size_t>(spec.columns) * spec.rows);

    detail::parallel_for(grid.counts.size(), threads, [&](std::size_t idx) {
        const int row = static_cast<int>(idx) / spec.columns;
        const int col = static_cast<int>(idx) % spec.columns;
        QuadraticParams params;
        params.max_iterations = spec.set.max_iterations;
        params.bailout = spec.set.bailout;
        params.cycle_detection = spec.set.cycle_detection;
        const std::complex<double> p = spec.pixel_center(col, row);
        if (spec.set.kind == SetSpec::Kind::julia) {
            params.c = spec.set.c;
            params.z0 = p;
        } else {
            params.c = p;
        }
        grid.counts[idx] = escape_iterate(params).iterations;
    });
    return grid;
}

}  // namespace multinacci::fractals
