#pragma once

#include "lipeq/specfile.hpp"

#include <string>

namespace lipeq {

// SVG 1.1 document showing each map's image of the unit box with every
// pairwise overlap shaded. All coordinates go through exact rational
// arithmetic and a fixed decimal renderer, so the bytes are reproducible.
// Pass a second spec for a side-by-side (stacked) comparison.
std::string render_svg(const SpecFile& a, const SpecFile* b = nullptr);

}  // namespace lipeq
