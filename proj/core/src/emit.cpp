#include "multinacci/emit.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

#include <nlohmann/json.hpp>

#include "multinacci/errors.hpp"

namespace multinacci::emit {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

ordered_json point_row(const spectra::PhiPoint& p) {
    return ordered_json{{"paper_k", p.paper_k},
                        {"order_m", p.order()},
                        {"n", p.n},
                        {"re", p.value.real()},
                        {"im", p.value.imag()},
                        {"residual", p.residual}};
}

std::vector<spectra::PhiPoint> read_points_json(std::string_view content) {
    json j = json::parse(content);
    const json& rows = j.contains("points") ? j.at("points") : j;
    std::vector<spectra::PhiPoint> points;
    points.reserve(rows.size());
    for (const json& row : rows) {
        spectra::PhiPoint p;
        p.paper_k = row.at("paper_k").get<int>();
        p.n = row.at("n").get<int>();
        p.value = {row.at("re").get<double>(), row.at("im").get<double>()};
        p.residual = row.value("residual", 0.0);
        p.source_root = p.value == std::complex<double>(0.0, 0.0)
                            ? std::complex<double>(0.0, 0.0)
                            : 1.0 / p.value;
        points.push_back(p);
    }
    return points;
}

double parse_double_field(std::string_view text, const char* column) {
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ValidationError(column, "bad numeric field '" + std::string(text) + "'");
    }
    return out;
}

std::vector<spectra::PhiPoint> read_points_csv(std::string_view content) {
    std::vector<spectra::PhiPoint> points;
    std::size_t pos = 0;
    bool header = true;
    while (pos < content.size()) {
        std::size_t eol = content.find('\n', pos);
        std::string_view line = content.substr(pos, eol == std::string_view::npos
                                                        ? std::string_view::npos
                                                        : eol - pos);
        pos = eol == std::string_view::npos ? content.size() : eol + 1;
        if (line.ends_with('\r')) line.remove_suffix(1);
        if (line.empty()) continue;
        if (header) {
            if (!line.starts_with("paper_k,")) {
                throw ValidationError("points", "expected header starting with 'paper_k,'");
            }
            header = false;
            continue;
        }
        std::vector<std::string_view> fields;
        std::size_t start = 0;
        while (true) {
            std::size_t comma = line.find(',', start);
            fields.push_back(line.substr(start, comma == std::string_view::npos
                                                    ? std::string_view::npos
                                                    : comma - start));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        if (fields.size() < 5) throw ValidationError("points", "row with fewer than 5 fields");
        spectra::PhiPoint p;
        p.paper_k = static_cast<int>(parse_double_field(fields[0], "paper_k"));
        p.n = static_cast<int>(parse_double_field(fields[2], "n"));
        p.value = {parse_double_field(fields[3], "re"), parse_double_field(fields[4], "im")};
        p.residual = fields.size() > 5 ? parse_double_field(fields[5], "residual") : 0.0;
        p.source_root = p.value == std::complex<double>(0.0, 0.0)
                            ? std::complex<double>(0.0, 0.0)
                            : 1.0 / p.value;
        points.push_back(p);
    }
    if (points.empty()) throw ValidationError("points", "no rows found");
    return points;
}

// 16-step grayscale for escaped pixels, black for members. Quantized so runs
// merge well in the SVG backdrop.
std::string shade_for(int count, int max_iterations) {
    if (count > max_iterations) return "#000000";
    const double t = std::min(1.0, static_cast<double>(count) / 64.0);
    const int level = 255 - static_cast<int>(t * 160.0);
    const int quantized = (level / 16) * 16;
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", quantized, quantized, quantized);
    return buf;
}

}  // namespace

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

std::string phi_table_csv(std::span<const sequences::PhiValue> phis) {
    std::string out = "paper_k,order_m,phi,phi_display\n";
    for (const auto& p : phis) {
        out += std::to_string(p.paper_k()) + "," + std::to_string(p.order) + "," +
               p.value.str() + "," + p.value.display() + "\n";
    }
    return out;
}

std::string phi_table_json(std::span<const sequences::PhiValue> phis) {
    ordered_json rows = ordered_json::array();
    for (const auto& p : phis) {
        rows.push_back(ordered_json{{"paper_k", p.paper_k()},
                                    {"order_m", p.order},
                                    {"phi", p.value.str()},
                                    {"phi_display", p.value.display()},
                                    {"digits", p.digits},
                                    {"terms_used", p.terms_used}});
    }
    return dump(rows);
}

std::string difference_table_csv(const sequences::DifferenceSequence& diffs) {
    std::string out = "paper_k,order_m,delta,delta_display\n";
    for (const auto& e : diffs.entries) {
        out += std::to_string(e.paper_k) + "," + std::to_string(e.order) + "," + e.value.str() +
               "," + e.value.display() + "\n";
    }
    return out;
}

std::string difference_table_json(const sequences::DifferenceSequence& diffs) {
    ordered_json rows = ordered_json::array();
    for (const auto& e : diffs.entries) {
        rows.push_back(ordered_json{{"paper_k", e.paper_k},
                                    {"order_m", e.order},
                                    {"delta", e.value.str()},
                                    {"delta_display", e.value.display()}});
    }
    return dump(rows);
}

std::string sequence_csv(const sequences::BigSequence& seq) {
    std::string out = "n,term\n";
    for (std::size_t i = 0; i < seq.terms.size(); ++i) {
        out += std::to_string(i) + "," + seq.terms[i].str() + "\n";
    }
    return out;
}

std::string sequence_json(const sequences::BigSequence& seq) {
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < seq.terms.size(); ++i) {
        rows.push_back(ordered_json{{"n", i}, {"term", seq.terms[i].str()}});
    }
    ordered_json j{{"order", seq.spec.order},
                   {"term_count", seq.spec.term_count},
                   {"terms", std::move(rows)}};
    return dump(j);
}

std::string eigen_csv(std::span<const spectra::EigenvalueSet> sets) {
    std::string out = "paper_k,order_m,n,re,im,residual\n";
    for (const auto& set : sets) {
        for (std::size_t i = 0; i < set.roots.size(); ++i) {
            out += std::to_string(set.order - 1) + "," + std::to_string(set.order) + "," +
                   std::to_string(i + 1) + "," + format_double(set.roots[i].real()) + "," +
                   format_double(set.roots[i].imag()) + "," + format_double(set.residuals[i]) +
                   "\n";
        }
    }
    return out;
}

std::string eigen_json(std::span<const spectra::EigenvalueSet> sets) {
    ordered_json rows = ordered_json::array();
    for (const auto& set : sets) {
        for (std::size_t i = 0; i < set.roots.size(); ++i) {
            rows.push_back(ordered_json{{"paper_k", set.order - 1},
                                        {"order_m", set.order},
                                        {"n", i + 1},
                                        {"re", set.roots[i].real()},
                                        {"im", set.roots[i].imag()},
                                        {"residual", set.residuals[i]}});
        }
    }
    return dump(rows);
}

std::string points_csv(std::span<const spectra::PhiPoint> points) {
    std::string out = "paper_k,order_m,n,re,im,residual\n";
    for (const auto& p : points) {
        out += std::to_string(p.paper_k) + "," + std::to_string(p.order()) + "," +
               std::to_string(p.n) + "," + format_double(p.value.real()) + "," +
               format_double(p.value.imag()) + "," + format_double(p.residual) + "\n";
    }
    return out;
}

std::string points_json(std::span<const spectra::PhiPoint> points) {
    ordered_json rows = ordered_json::array();
    int min_order = 0;
    int max_order = 0;
    for (const auto& p : points) {
        rows.push_back(point_row(p));
        if (min_order == 0 || p.order() < min_order) min_order = p.order();
        if (p.order() > max_order) max_order = p.order();
    }
    ordered_json j{
        {"metadata",
         ordered_json{{"total_points", points.size()},
                      {"orders", std::to_string(min_order) + ".." + std::to_string(max_order)},
                      {"reference_total", kReferenceCloudSize},
                      {"note", "reference total does not match any contiguous order range; "
                               "emitting the full set with provenance"}}},
        {"points", std::move(rows)}};
    return dump(j);
}

std::vector<spectra::PhiPoint> read_points(std::string_view content) {
    std::size_t first = content.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) throw ValidationError("points", "empty input");
    if (content[first] == '{' || content[first] == '[') return read_points_json(content);
    return read_points_csv(content);
}

std::string classification_csv(const fractals::MembershipReport& report) {
    std::string out = "paper_k,order_m,n,re,im,set,iterations,member,oracle\n";
    for (const auto& rec : report.records) {
        out += std::to_string(rec.point.paper_k) + "," + std::to_string(rec.point.order()) + "," +
               std::to_string(rec.point.n) + "," + format_double(rec.point.value.real()) + "," +
               format_double(rec.point.value.imag()) + "," + rec.set + "," +
               std::to_string(rec.escape.iterations) + "," + (rec.member ? "true" : "false") +
               "," + to_string(rec.oracle) + "\n";
    }
    return out;
}

std::string classification_json(const fractals::MembershipReport& report) {
    ordered_json summaries = ordered_json::array();
    for (const auto& s : report.summaries) {
        summaries.push_back(ordered_json{{"set", s.set},
                                         {"members", s.members},
                                         {"non_members", s.non_members},
                                         {"boundary_suspects", s.boundary_suspects},
                                         {"oracle_disagreements", s.oracle_disagreements}});
    }
    ordered_json records = ordered_json::array();
    for (const auto& rec : report.records) {
        records.push_back(ordered_json{{"paper_k", rec.point.paper_k},
                                       {"order_m", rec.point.order()},
                                       {"n", rec.point.n},
                                       {"re", rec.point.value.real()},
                                       {"im", rec.point.value.imag()},
                                       {"set", rec.set},
                                       {"iterations", rec.escape.iterations},
                                       {"member", rec.member},
                                       {"oracle", to_string(rec.oracle)}});
    }
    ordered_json j{
        {"metadata",
         ordered_json{{"total_points", report.total_points},
                      {"reference_total", kReferenceCloudSize},
                      {"reference_mandelbrot_members", kReferenceMandelbrotMembers},
                      {"note", "membership is relative to the per-set iteration budget"}}},
        {"summaries", std::move(summaries)},
        {"records", std::move(records)}};
    return dump(j);
}

std::string grid_pgm(const fractals::IterationGrid& grid) {
    std::string out = "P2\n" + std::to_string(grid.columns) + " " + std::to_string(grid.rows) +
                      "\n" + std::to_string(grid.max_iterations + 1) + "\n";
    for (int row = 0; row < grid.rows; ++row) {
        for (int col = 0; col < grid.columns; ++col) {
            if (col > 0) out += ' ';
            out += std::to_string(grid.at(col, row));
        }
        out += '\n';
    }
    return out;
}

std::string grid_svg(const fractals::IterationGrid& grid, const fractals::GridSpec& spec,
                     std::span<const spectra::PhiPoint> overlay) {
    const int w = grid.columns;
    const int h = grid.rows;
    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(w) +
           "\" height=\"" + std::to_string(h) + "\" viewBox=\"0 0 " + std::to_string(w) + " " +
           std::to_string(h) + "\">\n";

    // Backdrop: run-length merged rects of quantized shades, one pass per row.
    out += "<g shape-rendering=\"crispEdges\">\n";
    for (int row = 0; row < h; ++row) {
        int run_start = 0;
        std::string run_shade = shade_for(grid.at(0, row), grid.max_iterations);
        for (int col = 1; col <= w; ++col) {
            std::string shade =
                col < w ? shade_for(grid.at(col, row), grid.max_iterations) : std::string();
            if (col == w || shade != run_shade) {
                if (run_shade != "#ffffff") {
                    out += "<rect x=\"" + std::to_string(run_start) + "\" y=\"" +
                           std::to_string(row) + "\" width=\"" + std::to_string(col - run_start) +
                           "\" height=\"1\" fill=\"" + run_shade + "\"/>\n";
                }
                run_start = col;
                run_shade = std::move(shade);
            }
        }
    }
    out += "</g>\n";

    // Scatter overlay in pixel coordinates; points outside the view are kept
    // out of the file.
    const double left = spec.center.real() - spec.width / 2.0;
    const double top = spec.center.imag() + spec.height / 2.0;
    const double sx = w / spec.width;
    const double sy = h / spec.height;
    out += "<g fill=\"#d62728\" fill-opacity=\"0.85\">\n";
    for (const auto& p : overlay) {
        const double cx = (p.value.real() - left) * sx;
        const double cy = (top - p.value.imag()) * sy;
        if (cx < 0.0 || cx > w || cy < 0.0 || cy > h) continue;
        out += "<circle cx=\"" + format_double(cx) + "\" cy=\"" + format_double(cy) +
               "\" r=\"2.5\"/>\n";
    }
    out += "</g>\n</svg>\n";
    return out;
}

}  // namespace multinacci::emit
