// Pictures of the shed of a fan: SVG for dimensions 2 and 3, an OFF surface
// mesh for dimension 3.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "toric/fan.hpp"

namespace toric {

class RenderError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Outer facets conv(rays of a cone), oriented away from the origin. The
/// origin is not a vertex of the surface.
std::string shed_off(const Fan& fan);

/// n = 2: the polygon with its lattice points. n = 3: the outer facets in a
/// fixed oblique view, drawn back to front with flat shading; facets on the
/// highlighted ray (an exceptional divisor) are tinted.
std::string shed_svg(const Fan& fan, const std::string& title = "", std::optional<std::size_t> highlight = std::nullopt);

}  // namespace toric
