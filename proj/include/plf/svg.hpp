#pragma once
#include <optional>
#include <string>

#include "plf/io.hpp"

namespace plf {

// Deterministic SVG rendering of graph / separator / stairwell /
// broken_stairwell documents: the cylinder is drawn as one 200px
// square per edge in a row, sheets as polylines, markers as dots
// (grey for γ, black for the end sets).  nullopt for unsupported or
// empty documents.
std::optional<std::string> render_svg(const Document& d);

}  // namespace plf
