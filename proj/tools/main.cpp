// multinacci: k-step Fibonacci ratio tables, companion-matrix spectra, and
// escape-time classification of the inverse-eigenvalue point cloud.

#include <complex>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "multinacci/emit.hpp"
#include "multinacci/errors.hpp"
#include "multinacci/fractals.hpp"
#include "multinacci/sequences.hpp"
#include "multinacci/spectra.hpp"

namespace {

using namespace multinacci;

constexpr int kExitNumeric = 1;
constexpr int kExitValidation = 2;

struct OrderRange {
    int first = 2;
    int last = 20;
};

OrderRange parse_order_range(const std::string& text) {
    auto sep = text.find("..");
    try {
        if (sep == std::string::npos) {
            int v = std::stoi(text);
            return {v, v};
        }
        return {std::stoi(text.substr(0, sep)), std::stoi(text.substr(sep + 2))};
    } catch (const std::exception&) {
        throw ValidationError("--orders", "expected M or M..N, got '" + text + "'");
    }
}

fractals::SetSpec parse_set_spec(const std::string& text, int max_iterations, double bailout) {
    fractals::SetSpec set;
    if (text == "mandelbrot" || text == "m") {
        set = fractals::SetSpec::mandelbrot(max_iterations);
    } else if (text.starts_with("julia:")) {
        const std::string body = text.substr(6);
        double re = 0.0, im = 0.0;
        char suffix = 0;
        std::istringstream is(body);
        if (!(is >> re)) throw ValidationError("--set", "bad julia parameter '" + body + "'");
        if (is >> im >> suffix && suffix != 'i') {
            throw ValidationError("--set", "bad julia parameter '" + body + "'");
        }
        set = fractals::SetSpec::julia({re, im}, max_iterations);
    } else {
        throw ValidationError("--set", "expected 'mandelbrot' or 'julia:<re>[ <im>i]', got '" +
                                           text + "'");
    }
    set.bailout = bailout;
    return set;
}

std::complex<double> parse_complex(const std::string& text, const char* flag) {
    double re = 0.0, im = 0.0;
    char comma = 0;
    std::istringstream is(text);
    if (!(is >> re)) throw ValidationError(flag, "bad complex value '" + text + "'");
    if (is.peek() == ',' && !(is >> comma >> im)) {
        throw ValidationError(flag, "bad complex value '" + text + "'");
    }
    return {re, im};
}

/// Artifact to --output with a summary line on stdout, or artifact to stdout
/// with the summary on stderr.
void deliver(const std::string& artifact, const std::string& output_path,
             const std::string& summary) {
    if (output_path.empty()) {
        std::cout << artifact;
        std::cerr << summary << "\n";
        return;
    }
    std::ofstream out(output_path, std::ios::binary);
    if (!out) throw ValidationError("--output", "cannot open '" + output_path + "' for writing");
    out << artifact;
    out.close();
    if (!out) throw ValidationError("--output", "failed writing '" + output_path + "'");
    std::cout << summary << " -> " << output_path << "\n";
}

struct CommonOptions {
    std::string output;
    std::string format = "csv";
    int threads = 1;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"k-step Fibonacci ratios, companion-matrix spectra, and quadratic-family "
                 "escape-time classification"};
    app.require_subcommand(1);
    app.set_config("--config", "",
                   "Read defaults from a key=value file ([subcommand] sections or dotted keys)");
    app.set_version_flag("--version", "multinacci 0.1.0");

    // ---- seq ----------------------------------------------------------------
    auto* seq_cmd = app.add_subcommand("seq", "Generate the terms of an order-m sequence");
    int seq_order = 2;
    int seq_paper_k = 0;
    int seq_terms = sequences::kDefaultTerms;
    std::vector<std::string> seq_initial;
    CommonOptions seq_opts;
    seq_cmd->add_option("--order", seq_order, "Recurrence order m (terms summed)");
    seq_cmd->add_option("--paper-k", seq_paper_k, "Published index k = m - 1");
    seq_cmd->add_option("--terms", seq_terms, "Number of terms to generate");
    seq_cmd->add_option("--initial", seq_initial,
                        "Initial values (default: all ones)")->delimiter(',');
    seq_cmd->add_option("-o,--output", seq_opts.output, "Write the artifact to this path");
    seq_cmd->add_option("-f,--format", seq_opts.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));

    // ---- phis ---------------------------------------------------------------
    auto* phis_cmd = app.add_subcommand("phis", "Inverse-ratio table for orders 2..max");
    int phis_max_order = 20;
    int phis_max_paper_k = 0;
    int phis_terms = sequences::kDefaultTerms;
    int phis_digits = sequences::kDefaultDigits;
    CommonOptions phis_opts;
    phis_cmd->add_option("--max-order", phis_max_order, "Largest order m to include");
    phis_cmd->add_option("--max-paper-k", phis_max_paper_k,
                         "Largest published index k = m - 1 to include");
    phis_cmd->add_option("--terms", phis_terms, "Terms per sequence");
    phis_cmd->add_option("--digits", phis_digits, "Ratio precision in decimal places");
    phis_cmd->add_option("-o,--output", phis_opts.output, "Write the artifact to this path");
    phis_cmd->add_option("-f,--format", phis_opts.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    phis_cmd->add_option("-t,--threads", phis_opts.threads, "Worker threads")
        ->check(CLI::Range(1, 256));

    // ---- diffs --------------------------------------------------------------
    auto* diffs_cmd = app.add_subcommand("diffs", "Consecutive-difference table of the ratios");
    int diffs_max_order = 20;
    int diffs_max_paper_k = 0;
    int diffs_terms = sequences::kDefaultTerms;
    int diffs_digits = sequences::kDefaultDigits;
    CommonOptions diffs_opts;
    diffs_cmd->add_option("--max-order", diffs_max_order, "Largest order m to include");
    diffs_cmd->add_option("--max-paper-k", diffs_max_paper_k,
                          "Largest published index k = m - 1 to include");
    diffs_cmd->add_option("--terms", diffs_terms, "Terms per sequence");
    diffs_cmd->add_option("--digits", diffs_digits, "Ratio precision in decimal places");
    diffs_cmd->add_option("-o,--output", diffs_opts.output, "Write the artifact to this path");
    diffs_cmd->add_option("-f,--format", diffs_opts.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    diffs_cmd->add_option("-t,--threads", diffs_opts.threads, "Worker threads")
        ->check(CLI::Range(1, 256));

    // ---- scan ---------------------------------------------------------------
    auto* scan_cmd = app.add_subcommand(
        "scan", "First order whose ratio is within tolerance of 1/2");
    double scan_tolerance = 5e-7;
    int scan_max_order = 31;
    int scan_terms = sequences::kDefaultTerms;
    int scan_digits = sequences::kDefaultDigits;
    CommonOptions scan_opts;
    scan_cmd->add_option("--tolerance", scan_tolerance, "Convergence tolerance on |phi - 1/2|");
    scan_cmd->add_option("--max-order", scan_max_order, "Largest order m to try");
    scan_cmd->add_option("--terms", scan_terms, "Terms per sequence");
    scan_cmd->add_option("--digits", scan_digits, "Ratio precision in decimal places");
    scan_cmd->add_option("-o,--output", scan_opts.output, "Write the artifact to this path");
    scan_cmd->add_option("-f,--format", scan_opts.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    scan_cmd->add_option("-t,--threads", scan_opts.threads, "Worker threads")
        ->check(CLI::Range(1, 256));

    // ---- eigen --------------------------------------------------------------
    auto* eigen_cmd = app.add_subcommand("eigen", "Companion-matrix eigenvalues");
    std::string eigen_orders = "2..20";
    int eigen_order = 0;
    int eigen_paper_k = 0;
    double eigen_tolerance = 1e-12;
    bool eigen_compensated = false;
    CommonOptions eigen_opts;
    eigen_cmd->add_option("--orders", eigen_orders, "Order range M..N (or a single order)");
    eigen_cmd->add_option("--order", eigen_order, "Single order m");
    eigen_cmd->add_option("--paper-k", eigen_paper_k, "Single published index k = m - 1");
    eigen_cmd->add_option("--tolerance", eigen_tolerance, "Residual tolerance");
    eigen_cmd->add_flag("--compensated-polish", eigen_compensated,
                        "Double-double Newton polish above order 16");
    eigen_cmd->add_option("-o,--output", eigen_opts.output, "Write the artifact to this path");
    eigen_cmd->add_option("-f,--format", eigen_opts.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));

    // ---- points -------------------------------------------------------------
    auto* points_cmd = app.add_subcommand("points", "Inverse-eigenvalue point cloud");
    std::string points_orders = "2..20";
    double points_tolerance = 1e-12;
    bool points_compensated = false;
    CommonOptions points_opts;
    points_cmd->add_option("--orders", points_orders, "Order range M..N");
    points_cmd->add_option("--tolerance", points_tolerance, "Residual tolerance");
    points_cmd->add_flag("--compensated-polish", points_compensated,
                         "Double-double Newton polish above order 16");
    points_cmd->add_option("-o,--output", points_opts.output, "Write the artifact to this path");
    points_cmd->add_option("-f,--format", points_opts.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));

    // ---- classify -----------------------------------------------------------
    auto* classify_cmd =
        app.add_subcommand("classify", "Escape-time membership of the point cloud");
    std::vector<std::string> classify_sets{"julia:-2"};
    std::string classify_orders = "2..20";
    std::string classify_points_file;
    int classify_max_iter = fractals::kDefaultMaxIterations;
    double classify_bailout = fractals::kDefaultBailout;
    CommonOptions classify_opts;
    classify_cmd->add_option("--set", classify_sets,
                             "Target set: mandelbrot | julia:<re> (repeatable)");
    classify_cmd->add_option("--orders", classify_orders,
                             "Order range for a freshly computed cloud");
    classify_cmd->add_option("--points", classify_points_file,
                             "Read the cloud from a points CSV/JSON file instead");
    classify_cmd->add_option("--max-iter", classify_max_iter, "Iteration budget per point");
    classify_cmd->add_option("--bailout", classify_bailout, "Escape radius (>= 2)");
    bool classify_cycles = false;
    classify_cmd->add_flag("--cycle-detection", classify_cycles,
                           "Skip ahead on exactly periodic orbits (same output, less time)");
    classify_cmd->add_option("-o,--output", classify_opts.output,
                             "Write the artifact to this path");
    classify_cmd->add_option("-f,--format", classify_opts.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    classify_cmd->add_option("-t,--threads", classify_opts.threads, "Worker threads")
        ->check(CLI::Range(1, 256));

    // ---- render -------------------------------------------------------------
    auto* render_cmd = app.add_subcommand("render", "Iteration-count grid (PGM) or overlay (SVG)");
    std::string render_set = "mandelbrot";
    std::string render_center = "-0.5,0";
    double render_width = 3.2;
    double render_height = 2.4;
    int render_cols = 400;
    int render_rows = 300;
    int render_max_iter = fractals::kDefaultMaxIterations;
    double render_bailout = fractals::kDefaultBailout;
    std::string render_overlay;
    CommonOptions render_opts;
    render_opts.format = "pgm";
    render_cmd->add_option("--set", render_set, "mandelbrot | julia:<re>");
    render_cmd->add_option("--center", render_center, "View center as re[,im]");
    render_cmd->add_option("--width", render_width, "View width in plane units");
    render_cmd->add_option("--height", render_height, "View height in plane units");
    render_cmd->add_option("--cols", render_cols, "Pixel columns");
    render_cmd->add_option("--rows", render_rows, "Pixel rows");
    render_cmd->add_option("--max-iter", render_max_iter, "Iteration budget per pixel");
    render_cmd->add_option("--bailout", render_bailout, "Escape radius (>= 2)");
    bool render_cycles = false;
    render_cmd->add_flag("--cycle-detection", render_cycles,
                         "Skip ahead on exactly periodic orbits (same output, less time)");
    render_cmd->add_option("--overlay-orders", render_overlay,
                           "Overlay the cloud for this order range (svg only)");
    render_cmd->add_option("-o,--output", render_opts.output, "Write the artifact to this path");
    render_cmd->add_option("-f,--format", render_opts.format, "Output format")
        ->check(CLI::IsMember({"pgm", "svg", "csv"}));
    render_cmd->add_option("-t,--threads", render_opts.threads, "Worker threads")
        ->check(CLI::Range(1, 256));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        if (*seq_cmd) {
            if (seq_cmd->count("--paper-k") && !seq_cmd->count("--order")) {
                seq_order = seq_paper_k + 1;
            }
            sequences::RecurrenceSpec spec;
            spec.order = seq_order;
            spec.term_count = seq_terms;
            for (const auto& v : seq_initial) {
                try {
                    spec.initial_values.emplace_back(v);
                } catch (const std::exception&) {
                    throw ValidationError("--initial", "not an integer: '" + v + "'");
                }
            }
            auto seq = sequences::generate_sequence(spec);
            std::string artifact =
                seq_opts.format == "json" ? emit::sequence_json(seq) : emit::sequence_csv(seq);
            deliver(artifact, seq_opts.output,
                    "seq: order " + std::to_string(seq_order) + ", " +
                        std::to_string(seq.terms.size()) + " terms");
        } else if (*phis_cmd) {
            if (phis_cmd->count("--max-paper-k") && !phis_cmd->count("--max-order")) {
                phis_max_order = phis_max_paper_k + 1;
            }
            auto phis =
                sequences::phi_scan(phis_max_order, phis_terms, phis_digits, phis_opts.threads);
            std::string artifact = phis_opts.format == "json" ? emit::phi_table_json(phis)
                                                              : emit::phi_table_csv(phis);
            deliver(artifact, phis_opts.output,
                    "phis: " + std::to_string(phis.size()) + " rows, paper_k 1.." +
                        std::to_string(phis_max_order - 1));
        } else if (*diffs_cmd) {
            if (diffs_cmd->count("--max-paper-k") && !diffs_cmd->count("--max-order")) {
                diffs_max_order = diffs_max_paper_k + 1;
            }
            auto phis = sequences::phi_scan(diffs_max_order, diffs_terms, diffs_digits,
                                            diffs_opts.threads);
            auto diffs = sequences::difference_sequence(phis);
            std::string artifact = diffs_opts.format == "json"
                                       ? emit::difference_table_json(diffs)
                                       : emit::difference_table_csv(diffs);
            deliver(artifact, diffs_opts.output,
                    "diffs: " + std::to_string(diffs.entries.size()) + " rows");
        } else if (*scan_cmd) {
            auto scan = sequences::convergence_scan(scan_tolerance, scan_max_order, scan_terms,
                                                    scan_digits, scan_opts.threads);
            std::string artifact = scan_opts.format == "json"
                                       ? emit::phi_table_json(scan.phis)
                                       : emit::phi_table_csv(scan.phis);
            std::string verdict =
                scan.order ? "first order " + std::to_string(*scan.order) + " (paper_k " +
                                 std::to_string(*scan.order - 1) + ")"
                           : "not reached within max order " + std::to_string(scan_max_order);
            deliver(artifact, scan_opts.output,
                    "scan: tolerance " + emit::format_double(scan_tolerance) + ": " + verdict);
        } else if (*eigen_cmd) {
            OrderRange range = parse_order_range(eigen_orders);
            if (eigen_cmd->count("--paper-k") && !eigen_cmd->count("--order")) {
                eigen_order = eigen_paper_k + 1;
            }
            if (eigen_order != 0) range = {eigen_order, eigen_order};
            spectra::SolverConfig cfg;
            cfg.residual_tolerance = eigen_tolerance;
            cfg.compensated_polish = eigen_compensated;
            std::vector<spectra::EigenvalueSet> sets;
            for (int m = range.first; m <= range.last; ++m) {
                sets.push_back(spectra::eigenvalues(m, cfg));
            }
            std::string artifact =
                eigen_opts.format == "json" ? emit::eigen_json(sets) : emit::eigen_csv(sets);
            std::size_t roots = 0;
            for (const auto& s : sets) roots += s.roots.size();
            deliver(artifact, eigen_opts.output,
                    "eigen: orders " + std::to_string(range.first) + ".." +
                        std::to_string(range.last) + ", " + std::to_string(roots) + " roots");
        } else if (*points_cmd) {
            OrderRange range = parse_order_range(points_orders);
            spectra::SolverConfig cfg;
            cfg.residual_tolerance = points_tolerance;
            cfg.compensated_polish = points_compensated;
            auto points = spectra::phi_points(range.first, range.last, cfg);
            std::string artifact = points_opts.format == "json" ? emit::points_json(points)
                                                                : emit::points_csv(points);
            deliver(artifact, points_opts.output,
                    "points: " + std::to_string(points.size()) + " (reference total " +
                        std::to_string(emit::kReferenceCloudSize) + ")");
        } else if (*classify_cmd) {
            std::vector<spectra::PhiPoint> points;
            if (!classify_points_file.empty()) {
                std::ifstream in(classify_points_file, std::ios::binary);
                if (!in) {
                    throw ValidationError("--points",
                                          "cannot read '" + classify_points_file + "'");
                }
                std::ostringstream buffer;
                buffer << in.rdbuf();
                points = emit::read_points(buffer.str());
            } else {
                OrderRange range = parse_order_range(classify_orders);
                points = spectra::phi_points(range.first, range.last);
            }
            std::vector<fractals::SetSpec> sets;
            for (const auto& text : classify_sets) {
                sets.push_back(parse_set_spec(text, classify_max_iter, classify_bailout));
                sets.back().cycle_detection = classify_cycles;
            }
            auto report = fractals::classify_points(points, sets, classify_opts.threads);
            std::string artifact = classify_opts.format == "json"
                                       ? emit::classification_json(report)
                                       : emit::classification_csv(report);
            std::string summary = "classify: " + std::to_string(points.size()) + " points";
            for (const auto& s : report.summaries) {
                summary += "; " + s.set + " members " + std::to_string(s.members);
                if (s.set == "mandelbrot") {
                    summary += " (reference " + std::to_string(emit::kReferenceMandelbrotMembers) +
                               "/" + std::to_string(emit::kReferenceCloudSize) +
                               "; reference cloud size not derivable from a contiguous order "
                               "range)";
                }
            }
            deliver(artifact, classify_opts.output, summary);
        } else if (*render_cmd) {
            fractals::GridSpec grid_spec;
            grid_spec.set = parse_set_spec(render_set, render_max_iter, render_bailout);
            grid_spec.set.cycle_detection = render_cycles;
            grid_spec.center = parse_complex(render_center, "--center");
            grid_spec.width = render_width;
            grid_spec.height = render_height;
            grid_spec.columns = render_cols;
            grid_spec.rows = render_rows;
            auto grid = fractals::render_grid(grid_spec, render_opts.threads);

            std::string artifact;
            if (render_opts.format == "svg") {
                std::vector<spectra::PhiPoint> overlay;
                if (!render_overlay.empty()) {
                    OrderRange range = parse_order_range(render_overlay);
                    overlay = spectra::phi_points(range.first, range.last);
                }
                artifact = emit::grid_svg(grid, grid_spec, overlay);
            } else if (render_opts.format == "csv") {
                artifact = "col,row,iterations\n";
                for (int row = 0; row < grid.rows; ++row) {
                    for (int col = 0; col < grid.columns; ++col) {
                        artifact += std::to_string(col) + "," + std::to_string(row) + "," +
                                    std::to_string(grid.at(col, row)) + "\n";
                    }
                }
            } else {
                artifact = emit::grid_pgm(grid);
            }
            deliver(artifact, render_opts.output,
                    "render: " + grid_spec.set.name() + " " + std::to_string(render_cols) + "x" +
                        std::to_string(render_rows));
        }
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const ConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
    return 0;
}
