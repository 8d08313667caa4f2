#pragma once

#include <string>

namespace aoisched::cli {

/// Renders a static SVG line chart from tidy CSV text (columns x_name, x,
/// series, value). One polyline per series, in order of first appearance.
/// The output depends only on the CSV text and the title.
[[nodiscard]] std::string render_svg_chart(const std::string& tidy_csv, const std::string& title);

}  // namespace aoisched::cli
