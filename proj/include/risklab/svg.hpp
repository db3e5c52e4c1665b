#pragma once

#include <string>

#include "risklab/counterexamples.hpp"

namespace risklab::svg {

/// Standalone SVG 1.1: translucent red cone region, translucent blue staircase
/// region, both boundary polylines, axes and an origin marker. The viewport is
/// fixed by the figure window.
std::string render(const FigureData& fig);

/// One "# name" header per polyline or region followed by "x y" lines.
std::string vertex_list(const FigureData& fig);

/// Writes text to path; ConfigError if the file cannot be written.
void write_text(const std::string& text, const std::string& path);

}  // namespace risklab::svg
