#include "spartan/codec.hpp"

#include <algorithm>
#include <vector>

#include "spartan/error.hpp"

namespace spartan {

std::string to_canonical(const Placement& p) {
  const GridSpec& g = p.grid();
  std::string out(static_cast<std::size_t>(g.cell_count()), ' ');
  for (const Entry& e : p.entries()) {
    out[static_cast<std::size_t>(g.index_of(e.cell))] = e.ch;
  }
  return out;
}

Placement from_canonical(const GridSpec& grid, std::string_view canonical) {
  if (canonical.size() != static_cast<std::size_t>(grid.cell_count())) {
    throw ParseError(std::min(canonical.size(), static_cast<std::size_t>(grid.cell_count())),
                     "canonical form must have exactly rows*cols characters");
  }
  std::vector<Entry> entries;
  for (std::size_t i = 0; i < canonical.size(); ++i) {
    char ch = canonical[i];
    if (ch == ' ') continue;
    if (!grid.allows(ch)) {
      throw ParseError(i, std::string("character '") + ch + "' not in alphabet");
    }
    entries.push_back({grid.coord_at(static_cast<int>(i)), ch});
  }
  return Placement(grid, std::move(entries));
}

int coordinate_width(const GridSpec& grid) {
  int largest = std::max(grid.rows(), grid.cols());
  int digits = 0;
  for (; largest > 0; largest /= 10) ++digits;
  return digits;
}

std::string to_tagged(const Placement& p) {
  const int width = coordinate_width(p.grid());
  std::string out;
  out.reserve(p.size() * static_cast<std::size_t>(2 * width + 1));
  auto append_field = [&](int value) {
    std::string digits = std::to_string(value);
    out.append(static_cast<std::size_t>(width) - digits.size(), '0');
    out += digits;
  };
  for (const Entry& e : p.entries()) {
    append_field(e.cell.row + 1);
    append_field(e.cell.col + 1);
    out.push_back(e.ch);
  }
  return out;
}

namespace {

int parse_field(std::string_view text, std::size_t offset, int width, int limit,
                const char* axis) {
  if (offset + static_cast<std::size_t>(width) > text.size()) {
    throw ParseError(offset, std::string("truncated ") + axis + " field");
  }
  int value = 0;
  for (int i = 0; i < width; ++i) {
    char ch = text[offset + static_cast<std::size_t>(i)];
    if (ch < '0' || ch > '9') {
      throw ParseError(offset + static_cast<std::size_t>(i),
                       std::string("expected digit in ") + axis + " field");
    }
    value = value * 10 + (ch - '0');
  }
  if (value < 1 || value > limit) {
    throw ParseError(offset, std::string(axis) + " " + std::to_string(value) +
                                 " outside 1.." + std::to_string(limit));
  }
  return value - 1;
}

}  // namespace

Placement from_tagged(const GridSpec& grid, std::string_view text) {
  const int width = coordinate_width(grid);
  std::vector<bool> seen(static_cast<std::size_t>(grid.cell_count()), false);
  std::vector<Entry> entries;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t entry_start = pos;
    int row = parse_field(text, pos, width, grid.rows(), "row");
    pos += static_cast<std::size_t>(width);
    int col = parse_field(text, pos, width, grid.cols(), "column");
    pos += static_cast<std::size_t>(width);
    if (pos >= text.size()) {
      throw ParseError(pos, "missing character after coordinates");
    }
    char ch = text[pos];
    if (!grid.allows(ch)) {
      throw ParseError(pos, std::string("character '") + ch + "' not in alphabet");
    }
    Coord cell{row, col};
    auto idx = static_cast<std::size_t>(grid.index_of(cell));
    if (seen[idx]) {
      throw ParseError(entry_start, "duplicate coordinate");
    }
    seen[idx] = true;
    entries.push_back({cell, ch});
    ++pos;
  }
  return Placement(grid, std::move(entries));
}

}  // namespace spartan
