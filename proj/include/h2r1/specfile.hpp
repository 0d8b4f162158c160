#pragma once

#include <string>

#include "h2r1/rotational.hpp"
#include "h2r1/surface.hpp"

namespace h2r1 {

/// Surface description text, one `key = value` entry per line, `#` comments:
///   chart  = disk | polar              (required)
///   domain = u0 u1 v0 v1               (required)
///   graph  = <expression>              (height graph over the chart)
/// or explicit coordinates instead of graph:
///   x = <expr>   y = <expr>   t = <expr>       (disk)
///   r = <expr>   theta = <expr>   t = <expr>   (polar)
/// Expressions use parameters u, v; polar charts also accept r, theta as
/// aliases of u, v.  Throws SpecFileError with the offending line.
SurfacePatch parse_surface_spec(const std::string& text);
SurfacePatch load_surface_spec(const std::string& path);

std::string read_text_file(const std::string& path);

/// Profile CSV (columns r, h, dh[, ...], header line first) as written by
/// the rotational module; K_target comes from the caller.  Breakdown and
/// length diagnostics are not recoverable from CSV and are left NaN.
RotProfile load_profile_csv(const std::string& path, double K_target);

}  // namespace h2r1
