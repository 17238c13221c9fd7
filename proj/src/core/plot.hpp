#pragma once

#include <filesystem>
#include <vector>

#include "core/harness.hpp"

namespace corrspec {

// Plot rendering.
//
// Produces one self-contained SVG line chart per panel of a sweep's summary:
// mean error per method against the configured x field, with a shaded band
// of +/- 2 standard errors around each line.  Axes are logarithmic where the
// sweep's plot spec says so.  Files are named
//   <experiment>_<panel>.svg     (or <experiment>.svg without panel fields)
// and written atomically into `out_dir`.

/// Renders every panel; returns the written paths in deterministic order.
/// Throws DomainError if the sweep has no x-axis field configured, IoError
/// on write failure.
std::vector<std::filesystem::path> render_plots(
    const ResultTable& table, const std::filesystem::path& out_dir);

}  // namespace corrspec
