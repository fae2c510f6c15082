#pragma once

#include <cstdint>
#include <vector>

#include "spartan/grid.hpp"

namespace spartan {

struct Colorization {
  int rows = 0;
  int cols = 0;
  std::vector<std::uint8_t> cell_colors;  // row-major, each < palette_size

  std::uint8_t at(Coord c) const {
    return cell_colors[static_cast<std::size_t>(c.row * cols + c.col)];
  }

  bool operator==(const Colorization&) const = default;
};

/// Deterministic block pattern for a grid.
///
/// The grid is cut recursively (guillotine cuts drawn from a generator seeded
/// by color_seed) into rectangles whose sides are 2..4 cells wherever the
/// dimensions allow it. Rectangles are then colored so that no two sharing an
/// edge get the same color, which makes every maximal single-color region one
/// of those rectangles. Palettes that cannot achieve this on a given cut
/// layout fall back to a band layout that a two-color checkerboard covers.
Colorization colorize(const GridSpec& grid);

}  // namespace spartan
