#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "multinacci/fractals.hpp"
#include "multinacci/sequences.hpp"
#include "multinacci/spectra.hpp"

namespace multinacci::emit {

/// Reference values published for this point family. The published cloud size
/// does not match any contiguous order range (orders 2..20 give 209, 2..17
/// give 152), so exports carry these alongside their own totals instead of
/// forcing agreement.
inline constexpr int kReferenceCloudSize = 155;
inline constexpr int kReferenceMandelbrotMembers = 54;

/// Shortest round-trippable decimal form of a double (std::to_chars),
/// locale-independent and byte-stable across runs.
std::string format_double(double value);

// Ratio tables. Columns: paper_k, order_m, phi (full precision), phi_display
// (6 significant digits, trailing zeros trimmed).
std::string phi_table_csv(std::span<const sequences::PhiValue> phis);
std::string phi_table_json(std::span<const sequences::PhiValue> phis);

// Difference table. Columns: paper_k, order_m, delta, delta_display.
std::string difference_table_csv(const sequences::DifferenceSequence& diffs);
std::string difference_table_json(const sequences::DifferenceSequence& diffs);

// Sequence terms. Columns: n, term.
std::string sequence_csv(const sequences::BigSequence& seq);
std::string sequence_json(const sequences::BigSequence& seq);

// Eigenvalue sets. Columns: paper_k, order_m, n, re, im, residual.
std::string eigen_csv(std::span<const spectra::EigenvalueSet> sets);
std::string eigen_json(std::span<const spectra::EigenvalueSet> sets);

// Inverse-eigenvalue points, same columns. The JSON form carries metadata
// (own total plus the reference total). This file is the input contract for
// classification.
std::string points_csv(std::span<const spectra::PhiPoint> points);
std::string points_json(std::span<const spectra::PhiPoint> points);

/// Parses points back from either format (detected from the content).
/// Accepts exactly what points_csv / points_json produce.
std::vector<spectra::PhiPoint> read_points(std::string_view content);

// Classification report. Record columns: paper_k, order_m, n, re, im, set,
// iterations, member, oracle.
std::string classification_csv(const fractals::MembershipReport& report);
std::string classification_json(const fractals::MembershipReport& report);

/// ASCII PGM (P2); pixel values are raw iteration counts, maxval is
/// max_iterations + 1.
std::string grid_pgm(const fractals::IterationGrid& grid);

/// SVG: the grid as a grayscale backdrop (run-length merged rects, members
/// black) with the given points overlaid as markers.
std::string grid_svg(const fractals::IterationGrid& grid, const fractals::GridSpec& spec,
                     std::span<const spectra::PhiPoint> overlay);

}  // namespace multinacci::emit
