#pragma once

#include <string>

#include "regionalize/dataset.hpp"
#include "regionalize/partition.hpp"

namespace regionalize {

/// SVG map of a lattice dataset: one square cell per unit, centered on its
/// coordinates and filled by region. Cell size is the smallest positive
/// spacing between distinct x or y coordinates. Output depends only on the
/// inputs. Throws DataError when the dataset has no coordinates.
std::string render_svg(const Dataset& d, const Partition& p, int pixels_per_cell = 24);

/// Fill color of region `r` as `#rrggbb`.
std::string region_color(int r);

}  // namespace regionalize
