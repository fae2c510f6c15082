#pragma once

#include <string>
#include <string_view>

#include "spartan/grid.hpp"

namespace spartan {

/// Row-major concatenation of every cell, space for empty cells. This is the
/// byte string that gets hashed.
std::string to_canonical(const Placement& p);

/// Inverse of to_canonical. Throws ParseError on a wrong length or a
/// character outside the alphabet.
Placement from_canonical(const GridSpec& grid, std::string_view canonical);

/// Width of one coordinate field: decimal digits of max(rows, cols).
int coordinate_width(const GridSpec& grid);

/// Coordinate-tagged form: for each entry in row-major order, the 1-based
/// row and column zero-padded to coordinate_width(), then the character.
/// On a 9x9 grid "23P24a" puts 'P' at row 2 col 3 and 'a' at row 2 col 4.
std::string to_tagged(const Placement& p);

/// Parses a tagged form on `grid`. Entries may appear in any order.
/// Throws ParseError (with byte offset) on malformed digits, coordinates
/// out of range, a missing character, a character outside the alphabet, or
/// a repeated coordinate.
Placement from_tagged(const GridSpec& grid, std::string_view text);

}  // namespace spartan
