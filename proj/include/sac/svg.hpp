#pragma once

#include <string>

#include "sac/csvio.hpp"

namespace sac {

enum class SvgKind { Slice, Density, Zeros, Probe };

SvgKind svg_kind_from_name(const std::string& name);

// Deterministic 800x800 rendering of a CSV artifact; the same CSV bytes
// always produce the same SVG bytes.  Axis mapping per kind:
//   slice   (theta, radius):      polar plot, plane window [-2, 2]^2
//   density (bin_lo, bin_hi, mass): bar chart, x = [0, 2pi), y = [0, max mass]
//   zeros   (level, theta, t):    cylinder unrolled, x = theta in [0, 2pi), y = t in [0, 1]
//   probe   (j, bandwidth, ...):  log2-log2 scatter of bandwidth vs j
// Throws UsageError on a schema mismatch.
std::string render_svg(const Csv& csv, SvgKind kind);

void render_svg_file(const std::string& csv_path, SvgKind kind,
                     const std::string& out_path);

}  // namespace sac
