// Acceptance suite: one line per criterion, nonzero exit if any fail.
// Usage: acceptance [path-to-cli-binary]

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "multinacci/emit.hpp"
#include "multinacci/fractals.hpp"
#include "multinacci/sequences.hpp"
#include "multinacci/spectra.hpp"

using namespace multinacci;

namespace {

std::string g_cli_path;
int g_failures = 0;

class Criterion {
public:
    explicit Criterion(int id, std::string title) : id_(id), title_(std::move(title)) {
        start_ = std::chrono::steady_clock::now();
    }

    void require(bool condition, const std::string& detail) {
        if (!condition) {
            ok_ = false;
            if (!first_failure_.empty()) first_failure_ += "; ";
            first_failure_ += detail;
        }
    }

    void note(const std::string& text) {
        if (!notes_.empty()) notes_ += "; ";
        notes_ += text;
    }

    void finish() {
        const auto elapsed = std::chrono::steady_clock::now() - start_;
        const double secs =
            std::chrono::duration_cast<std::chrono::duration<double>>(elapsed).count();
        std::printf("[%s] criterion %d: %s (%.2fs)%s%s%s%s\n", ok_ ? "PASS" : "FAIL", id_,
                    title_.c_str(), secs, notes_.empty() ? "" : " -- ", notes_.c_str(),
                    first_failure_.empty() ? "" : " -- ", first_failure_.c_str());
        if (!ok_) ++g_failures;
    }

    bool ok() const { return ok_; }
    double seconds() const {
        return std::chrono::duration_cast<std::chrono::duration<double>>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    int id_;
    std::string title_;
    std::string first_failure_;
    std::string notes_;
    bool ok_ = true;
    std::chrono::steady_clock::time_point start_;
};

/// Exact display match, with the documented one-display-ulp escape hatch:
/// a mismatch confined to +-1 in the last printed digit is logged, not failed.
void check_display(Criterion& c, const std::string& actual, const std::string& expected) {
    if (actual == expected) return;
    bool within_ulp = false;
    if (actual.size() == expected.size() &&
        actual.compare(0, actual.size() - 1, expected, 0, expected.size() - 1) == 0) {
        within_ulp = std::abs(actual.back() - expected.back()) == 1;
    }
    if (within_ulp) {
        c.note("display '" + actual + "' within one ulp of '" + expected + "' (logged)");
    } else {
        c.require(false, "display '" + actual + "' != '" + expected + "'");
    }
}

struct CliRun {
    int exit_code = -1;
    std::string stdout_text;
};

CliRun run_cli(const std::string& args) {
    CliRun r;
    if (g_cli_path.empty()) return r;
    const std::string out = "/tmp/multinacci_acceptance.out";
    int status = std::system((g_cli_path + " " + args + " >" + out + " 2>/dev/null").c_str());
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    r.stdout_text = buf.str();
    std::remove(out.c_str());
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// --- criteria ----------------------------------------------------------------

void criterion_1_table_rows() {
    Criterion c(1, "ratio table rows k=1..9 match the published strings");
    const std::vector<std::string> expected{"0.618034", "0.543689", "0.51879",
                                            "0.50866",  "0.504138", "0.502017",
                                            "0.500994", "0.500493", "0.500245"};
    auto phis = sequences::phi_scan(10);
    for (std::size_t i = 0; i < expected.size(); ++i) {
        check_display(c, phis[i].value.display(), expected[i]);
    }
    if (!g_cli_path.empty()) {
        auto run = run_cli("phis --max-paper-k 9 --digits 6");
        c.require(run.exit_code == 0, "cli phis exited nonzero");
        for (std::size_t i = 0; i < expected.size(); ++i) {
            const std::string row = "," + expected[i] + "\n";
            c.require(run.stdout_text.find(row) != std::string::npos,
                      "cli output missing display " + expected[i]);
        }
    }
    c.require(c.seconds() < 1.0, "exceeded 1s budget");
    c.finish();
}

void criterion_2_convergence_list() {
    Criterion c(2, "scan rows k=10..30 match and convergence hits paper_k 18");
    const std::vector<std::string> expected{"0.500122", "0.500061", "0.500031", "0.500015",
                                            "0.500008", "0.500004", "0.500002", "0.500001"};
    auto phis = sequences::phi_scan(31);
    for (std::size_t i = 0; i < expected.size(); ++i) {
        check_display(c, phis[i + 9].value.display(), expected[i]);  // paper_k 10 is order 11
    }
    for (int k = 18; k <= 30; ++k) {
        check_display(c, phis[static_cast<std::size_t>(k - 1)].value.display(), "0.5");
    }
    auto scan = sequences::convergence_scan(5e-7, 31);
    c.require(scan.order.has_value(), "no converging order found");
    if (scan.order) {
        c.require(*scan.order == 19, "first order " + std::to_string(*scan.order) +
                                         " (paper_k " + std::to_string(*scan.order - 1) +
                                         "), expected paper_k 18");
    }
    c.require(c.seconds() < 5.0, "exceeded 5s budget");
    c.finish();
}

void criterion_3_difference_list() {
    Criterion c(3, "difference rows k=1..12 match; positive, decreasing, halving tail");
    const std::vector<std::string> expected{
        "0.074345",    "0.0248989",   "0.0101297",    "0.00452213",
        "0.0021212",   "0.00102288",  "0.00050106",   "0.000247656",
        "0.000123033", "0.0000612972", "0.0000305886", "0.0000152779"};
    auto phis = sequences::phi_scan(31);
    auto diffs = sequences::difference_sequence(phis);
    c.require(diffs.entries.size() == 29, "expected 29 entries through k=29");
    for (std::size_t i = 0; i < expected.size() && i < diffs.entries.size(); ++i) {
        check_display(c, diffs.entries[i].value.display(), expected[i]);
    }
    for (std::size_t i = 0; i < diffs.entries.size(); ++i) {
        c.require(!diffs.entries[i].value.is_negative() && !diffs.entries[i].value.is_zero(),
                  "entry k=" + std::to_string(diffs.entries[i].paper_k) + " not positive");
        if (i > 0) {
            c.require(diffs.entries[i].value < diffs.entries[i - 1].value,
                      "entry k=" + std::to_string(diffs.entries[i].paper_k) + " not decreasing");
        }
    }
    for (std::size_t i = 14; i + 1 < diffs.entries.size(); ++i) {
        const double ratio =
            diffs.entries[i + 1].value.to_double() / diffs.entries[i].value.to_double();
        c.require(ratio > 0.49 && ratio < 0.51,
                  "ratio at k=" + std::to_string(diffs.entries[i].paper_k) + " is " +
                      std::to_string(ratio));
    }
    c.finish();
}

void criterion_4_golden_eigenpair() {
    Criterion c(4, "order-2 eigenpair equals (1 +- sqrt5)/2 and inverts to 0.618034");
    auto set = spectra::eigenvalues(2);
    const double sqrt5 = std::sqrt(5.0);
    c.require(std::abs(set.roots[0] - std::complex<double>((1 + sqrt5) / 2, 0.0)) < 1e-12,
              "dominant root off closed form");
    c.require(std::abs(set.roots[1] - std::complex<double>((1 - sqrt5) / 2, 0.0)) < 1e-12,
              "second root off closed form");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", 1.0 / set.roots[0].real());
    c.require(std::string(buf) == "0.618034", std::string("1/root = ") + buf);
    c.finish();
}

void criterion_5_spectral_properties() {
    Criterion c(5, "orders 2..20: residuals, Vieta, Pisot, and the sequence cross-check");
    for (int m = 2; m <= 20; ++m) {
        auto set = spectra::eigenvalues(m);
        for (double r : set.residuals) {
            c.require(r < 1e-12,
                      "order " + std::to_string(m) + " residual " + std::to_string(r));
        }
        std::complex<double> sum{0.0, 0.0};
        for (const auto& root : set.roots) sum += root;
        c.require(std::abs(sum - std::complex<double>(1.0, 0.0)) < 1e-10,
                  "order " + std::to_string(m) + " Vieta sum off");
        int outside = 0;
        for (const auto& root : set.roots) outside += std::abs(root) > 1.0;
        c.require(outside == 1, "order " + std::to_string(m) + " has " +
                                    std::to_string(outside) + " roots outside the unit circle");
        const double from_sequence = sequences::phi(m).value.to_double();
        c.require(std::abs(1.0 / set.roots[0].real() - from_sequence) < 1e-6,
                  "order " + std::to_string(m) + " inverse dominant root off the ratio");
    }
    c.require(c.seconds() < 10.0, "exceeded 10s budget");
    c.finish();
}

void criterion_6_julia_minus_one() {
    Criterion c(6, "julia(-1): 0.6180339887 -> 1001; 0.543689 -> finite");
    const int golden = fractals::julia_iteration_count({-1.0, 0.0}, {0.6180339887, 0.0}, 1000);
    c.require(golden == 1001, "count at 0.6180339887 is " + std::to_string(golden));

    const int tribonacci = fractals::julia_iteration_count({-1.0, 0.0}, {0.543689, 0.0}, 1000);
    // The orbit of 0.543689 under z^2 - 1 is provably bounded (the interval
    // [-1.6180..., 1.6180...] maps into itself), so the escape count equals
    // budget + 1 at every budget and can never be finite. Asserted as stated;
    // expected to fail.
    c.require(tribonacci != 1001,
              "count at 0.543689 is " + std::to_string(tribonacci) +
                  " (= budget + 1): the orbit is bounded inside the forward-invariant "
                  "interval [-1.618..., 1.618...], so a finite count is unattainable under "
                  "escape-time semantics at any budget");
    c.finish();
}

void criterion_7_julia_minus_two_suite() {
    Criterion c(7, "julia(-2) over the cloud: segment oracle and count classes");
    auto points = spectra::phi_points(2, 20);
    std::vector<fractals::SetSpec> sets{fractals::SetSpec::julia({-2.0, 0.0}, 1000)};
    auto report = fractals::classify_points(points, sets, 2);

    std::vector<int> histogram;
    for (const auto& rec : report.records) {
        const bool oracle_member = std::abs(rec.point.value.imag()) <= 1e-9 &&
                                   std::abs(rec.point.value.real()) <= 2.0;
        c.require(rec.member == oracle_member,
                  "oracle mismatch at (" + emit::format_double(rec.point.value.real()) + "," +
                      emit::format_double(rec.point.value.imag()) + ")");
        if (rec.member) {
            c.require(rec.escape.iterations == 1001,
                      "member with count " + std::to_string(rec.escape.iterations));
        } else {
            c.require(rec.escape.iterations >= 1 && rec.escape.iterations <= 4,
                      "escaped count " + std::to_string(rec.escape.iterations) +
                          " outside the small-count class");
        }
        if (static_cast<std::size_t>(rec.escape.iterations) >= histogram.size()) {
            histogram.resize(static_cast<std::size_t>(rec.escape.iterations) + 1, 0);
        }
        ++histogram[static_cast<std::size_t>(rec.escape.iterations)];
    }
    std::string multiset = "counts:";
    for (std::size_t i = 0; i < histogram.size(); ++i) {
        if (histogram[i] > 0) {
            multiset += " " + std::to_string(i) + "x" + std::to_string(histogram[i]);
        }
    }
    c.note(multiset);
    c.finish();
}

void criterion_8_mandelbrot_oracle() {
    Criterion c(8, "mandelbrot real-axis oracle over the cloud; aggregate reported");
    auto points = spectra::phi_points(2, 20);
    std::vector<fractals::SetSpec> sets{fractals::SetSpec::mandelbrot(1000)};
    auto report = fractals::classify_points(points, sets, 2);

    int members = 0;
    bool saw_golden = false;
    bool saw_negative_golden = false;
    for (const auto& rec : report.records) {
        members += rec.member;
        if (rec.point.value.imag() != 0.0) continue;
        const double re = rec.point.value.real();
        const bool oracle_member = re >= -2.0 && re <= 0.25;
        c.require(rec.member == oracle_member,
                  "real point " + emit::format_double(re) + " classified " +
                      (rec.member ? "member" : "non-member"));
        if (std::abs(re - 0.618034) < 1e-6) {
            saw_golden = true;
            c.require(!rec.member, "0.618034 must be non-member");
        }
        if (std::abs(re + 1.618034) < 1e-6) {
            saw_negative_golden = true;
            c.require(rec.member, "-1.618034 must be member");
        }
    }
    c.require(saw_golden, "0.618034 missing from the cloud");
    c.require(saw_negative_golden, "-1.618034 missing from the cloud");
    c.note("aggregate members " + std::to_string(members) + "/" +
           std::to_string(report.total_points) + " at budget 1000; reference " +
           std::to_string(emit::kReferenceMandelbrotMembers) + "/" +
           std::to_string(emit::kReferenceCloudSize) +
           " (reference cloud size matches no contiguous order range; count agreement not "
           "required)");
    c.finish();
}

void criterion_9_kernel_properties() {
    Criterion c(9, "randomized bailout soundness, budget monotonicity, oracle agreement");
    std::mt19937 rng(90210);
    std::uniform_real_distribution<double> box(-2.0, 2.0);
    std::uniform_real_distribution<double> wide(-2.5, 2.5);

    int bailout_checked = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::complex<double> cc{box(rng), box(rng)};
        const std::complex<double> z0{wide(rng), wide(rng)};
        if (std::abs(cc) > 2.0) continue;
        fractals::QuadraticParams p;
        p.c = cc;
        p.z0 = z0;
        p.max_iterations = 300;
        auto r = fractals::escape_iterate(p);
        if (!r.escaped) continue;
        ++bailout_checked;
        c.require(r.final_modulus > 2.0, "escape reported with modulus <= 2");
        std::complex<double> z = z0;
        for (int i = 0; i < r.iterations; ++i) z = z * z + cc;
        double mod = std::abs(z);
        for (int extra = 0; extra < 10; ++extra) {
            z = z * z + cc;
            const double next = std::abs(z);
            if (!std::isfinite(next)) break;
            c.require(next > mod, "modulus failed to grow after escape");
            mod = next;
        }
    }
    c.require(bailout_checked >= 300, "too few escaping samples for the soundness check");

    for (int trial = 0; trial < 1000; ++trial) {
        const std::complex<double> cc{box(rng), box(rng)};
        const std::complex<double> z0{box(rng), box(rng)};
        fractals::QuadraticParams p;
        p.c = cc;
        p.z0 = z0;
        p.max_iterations = 50;
        auto small = fractals::escape_iterate(p);
        p.max_iterations = 200;
        auto large = fractals::escape_iterate(p);
        if (small.escaped) {
            c.require(large.escaped && large.iterations == small.iterations,
                      "escape count changed when the budget grew");
        }
    }

    int julia_checked = 0, julia_agreed = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const double x = wide(rng);
        if (std::abs(std::abs(x) - 2.0) <= 1e-9) continue;
        ++julia_checked;
        const bool member = fractals::julia_iteration_count({-2.0, 0.0}, {x, 0.0}, 1000) == 1001;
        julia_agreed += member == (std::abs(x) <= 2.0);
    }
    c.require(julia_checked > 0 &&
                  static_cast<double>(julia_agreed) / julia_checked >= 0.999,
              "julia(-2) oracle agreement below 99.9%");

    std::uniform_real_distribution<double> cspan(-2.2, 0.5);
    int mandel_checked = 0, mandel_agreed = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const double cv = cspan(rng);
        if (std::abs(cv + 2.0) <= 1e-6 || std::abs(cv - 0.25) <= 1e-6) continue;
        ++mandel_checked;
        const bool member = fractals::mandelbrot_member({cv, 0.0}, 1000).member;
        mandel_agreed += member == (cv >= -2.0 && cv <= 0.25);
    }
    c.require(mandel_checked > 0 &&
                  static_cast<double>(mandel_agreed) / mandel_checked >= 0.999,
              "real mandelbrot oracle agreement below 99.9%");

    c.require(c.seconds() < 30.0, "exceeded 30s budget");
    c.finish();
}

void criterion_10_figure_artifacts() {
    Criterion c(10, "figure artifacts: mandelbrot pgm + svg overlay, julia(-1) zoom marker");
    if (g_cli_path.empty()) {
        c.require(false, "no cli path supplied");
        c.finish();
        return;
    }
    const std::string dir = "/tmp/multinacci_acceptance_artifacts";
    if (std::system(("mkdir -p " + dir).c_str()) != 0) {
        c.require(false, "could not create the artifact directory");
        c.finish();
        return;
    }

    const std::string mandel_args =
        "render --set mandelbrot --center -0.5,0 --width 3.2 --height 2.4 --cols 320 --rows 240 "
        "--max-iter 300";
    const std::string pgm1 = dir + "/mandel1.pgm";
    const std::string pgm2 = dir + "/mandel2.pgm";
    c.require(run_cli(mandel_args + " --format pgm -o " + pgm1).exit_code == 0, "pgm render failed");
    c.require(run_cli(mandel_args + " --format pgm -o " + pgm2).exit_code == 0, "pgm render failed");
    c.require(!slurp(pgm1).empty() && slurp(pgm1) == slurp(pgm2),
              "pgm not byte-identical across runs");
    c.require(slurp(pgm1).starts_with("P2\n320 240\n301\n"), "pgm header malformed");

    const std::string svg1 = dir + "/overlay1.svg";
    const std::string svg2 = dir + "/overlay2.svg";
    c.require(run_cli(mandel_args + " --format svg --overlay-orders 2..20 -o " + svg1).exit_code ==
                  0,
              "svg render failed");
    c.require(run_cli(mandel_args + " --format svg --overlay-orders 2..20 -o " + svg2).exit_code ==
                  0,
              "svg render failed");
    c.require(!slurp(svg1).empty() && slurp(svg1) == slurp(svg2),
              "svg not byte-identical across runs");
    c.require(slurp(svg1).find("<circle") != std::string::npos, "svg overlay has no markers");

    // julia(-1) zoom around the golden point, marker expected at its exact
    // pixel position.
    const double view_center = 0.618, view_w = 0.5, view_h = 0.375;
    const int cols = 320, rows = 240;
    const std::string julia_args = "render --set julia:-1 --center 0.618,0 --width 0.5 "
                                   "--height 0.375 --cols 320 --rows 240 --max-iter 300 "
                                   "--format svg --overlay-orders 2..20";
    const std::string zoom1 = dir + "/zoom1.svg";
    const std::string zoom2 = dir + "/zoom2.svg";
    c.require(run_cli(julia_args + " -o " + zoom1).exit_code == 0, "zoom render failed");
    c.require(run_cli(julia_args + " -o " + zoom2).exit_code == 0, "zoom render failed");
    c.require(!slurp(zoom1).empty() && slurp(zoom1) == slurp(zoom2),
              "zoom svg not byte-identical across runs");

    auto golden_points = spectra::phi_points(2, 2);
    const double cx = (golden_points[0].value.real() - (view_center - view_w / 2)) * cols / view_w;
    const double cy = (0.0 + view_h / 2 - golden_points[0].value.imag()) * rows / view_h;
    const std::string marker =
        "<circle cx=\"" + emit::format_double(cx) + "\" cy=\"" + emit::format_double(cy) + "\"";
    c.require(slurp(zoom1).find(marker) != std::string::npos,
              "marker at 0.618034 missing from the zoom svg");
    c.finish();
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) g_cli_path = argv[1];

    criterion_1_table_rows();
    criterion_2_convergence_list();
    criterion_3_difference_list();
    criterion_4_golden_eigenpair();
    criterion_5_spectral_properties();
    criterion_6_julia_minus_one();
    criterion_7_julia_minus_two_suite();
    criterion_8_mandelbrot_oracle();
    criterion_9_kernel_properties();
    criterion_10_figure_artifacts();

    if (g_failures == 0) {
        std::printf("all criteria passed\n");
        return 0;
    }
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
}
