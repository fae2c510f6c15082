#include "spartan/colorize.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>

namespace spartan {
namespace {

struct Rect {
  int row = 0;
  int col = 0;
  int height = 0;
  int width = 0;
};

constexpr int kMaxBlockSide = 4;
constexpr int kMinBlockSide = 2;
constexpr int kLayoutAttempts = 8;
constexpr long kColoringBudget = 200000;

// Raw engine output only; std distributions are implementation-defined and
// would make layouts differ across standard libraries.
std::uint64_t pick(std::mt19937_64& rng, std::uint64_t bound) {
  return rng() % bound;
}

// A cut at offset c leaves two sides of at least kMinBlockSide.
int pick_cut(std::mt19937_64& rng, int extent) {
  auto choices = static_cast<std::uint64_t>(extent - 2 * kMinBlockSide + 1);
  return kMinBlockSide + static_cast<int>(pick(rng, choices));
}

void subdivide(const Rect& r, std::mt19937_64& rng, std::vector<Rect>& out) {
  bool must_rows = r.height > kMaxBlockSide;
  bool must_cols = r.width > kMaxBlockSide;
  bool split_rows = must_rows;
  bool split_cols = must_cols;

  if (!must_rows && !must_cols) {
    // Occasionally halve a side of exactly 4 so block sizes vary.
    bool can_rows = r.height == kMaxBlockSide;
    bool can_cols = r.width == kMaxBlockSide;
    if ((can_rows || can_cols) && pick(rng, 3) == 0) {
      if (can_rows && can_cols) {
        (pick(rng, 2) == 0 ? split_rows : split_cols) = true;
      } else {
        split_rows = can_rows;
        split_cols = can_cols;
      }
    } else {
      out.push_back(r);
      return;
    }
  } else if (must_rows && must_cols) {
    if (pick(rng, 2) == 0) {
      split_cols = false;
    } else {
      split_rows = false;
    }
  }

  if (split_rows) {
    int cut = pick_cut(rng, r.height);
    subdivide({r.row, r.col, cut, r.width}, rng, out);
    subdivide({r.row + cut, r.col, r.height - cut, r.width}, rng, out);
  } else {
    int cut = pick_cut(rng, r.width);
    subdivide({r.row, r.col, r.height, cut}, rng, out);
    subdivide({r.row, r.col + cut, r.height, r.width - cut}, rng, out);
  }
}

bool share_edge(const Rect& a, const Rect& b) {
  auto overlap = [](int a0, int alen, int b0, int blen) {
    return std::min(a0 + alen, b0 + blen) - std::max(a0, b0) > 0;
  };
  bool vertical_touch = (a.col + a.width == b.col || b.col + b.width == a.col) &&
                        overlap(a.row, a.height, b.row, b.height);
  bool horizontal_touch = (a.row + a.height == b.row || b.row + b.height == a.row) &&
                          overlap(a.col, a.width, b.col, b.width);
  return vertical_touch || horizontal_touch;
}

// Backtracking proper coloring; candidate colors start round-robin from the
// block index shifted by `offset`.
std::optional<std::vector<int>> color_blocks(const std::vector<Rect>& blocks,
                                             int palette, int offset) {
  const std::size_t n = blocks.size();
  std::vector<std::vector<std::size_t>> earlier(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (share_edge(blocks[i], blocks[j])) earlier[i].push_back(j);
    }
  }

  std::vector<int> color(n, -1);
  std::vector<int> tried(n, 0);
  long budget = kColoringBudget;
  std::size_t i = 0;
  while (i < n) {
    if (--budget < 0) return std::nullopt;
    bool placed = false;
    while (tried[i] < palette) {
      int c = (static_cast<int>(i) + offset + tried[i]) % palette;
      ++tried[i];
      bool clash = std::any_of(earlier[i].begin(), earlier[i].end(),
                               [&](std::size_t j) { return color[j] == c; });
      if (!clash) {
        color[i] = c;
        placed = true;
        break;
      }
    }
    if (placed) {
      ++i;
      continue;
    }
    tried[i] = 0;
    color[i] = -1;
    if (i == 0) return std::nullopt;
    --i;
  }
  return color;
}

std::vector<int> band_sizes(int extent, std::mt19937_64& rng) {
  std::vector<int> sizes;
  int remaining = extent;
  while (remaining > kMaxBlockSide) {
    int upper = std::min(kMaxBlockSide, remaining - kMinBlockSide);
    int size = kMinBlockSide + static_cast<int>(pick(rng, upper - kMinBlockSide + 1));
    sizes.push_back(size);
    remaining -= size;
  }
  sizes.push_back(remaining);
  return sizes;
}

Colorization checkerboard_bands(const GridSpec& grid, std::mt19937_64& rng) {
  Colorization out{grid.rows(), grid.cols(),
                   std::vector<std::uint8_t>(static_cast<std::size_t>(grid.cell_count()))};
  std::vector<int> row_bands = band_sizes(grid.rows(), rng);
  std::vector<int> col_bands = band_sizes(grid.cols(), rng);
  int palette = grid.palette_size();
  int first = static_cast<int>(pick(rng, static_cast<std::uint64_t>(palette)));
  int second = palette > 1 ? (first + 1) % palette : first;

  int r0 = 0;
  for (std::size_t bi = 0; bi < row_bands.size(); ++bi) {
    int c0 = 0;
    for (std::size_t bj = 0; bj < col_bands.size(); ++bj) {
      auto color = static_cast<std::uint8_t>((bi + bj) % 2 == 0 ? first : second);
      for (int r = r0; r < r0 + row_bands[bi]; ++r) {
        for (int c = c0; c < c0 + col_bands[bj]; ++c) {
          out.cell_colors[static_cast<std::size_t>(r * grid.cols() + c)] = color;
        }
      }
      c0 += col_bands[bj];
    }
    r0 += row_bands[bi];
  }
  return out;
}

}  // namespace

Colorization colorize(const GridSpec& grid) {
  std::mt19937_64 rng(grid.color_seed());
  const int palette = grid.palette_size();

  if (palette == 1) {
    return {grid.rows(), grid.cols(),
            std::vector<std::uint8_t>(static_cast<std::size_t>(grid.cell_count()), 0)};
  }

  if (palette >= 3) {
    for (int attempt = 0; attempt < kLayoutAttempts; ++attempt) {
      std::vector<Rect> blocks;
      subdivide({0, 0, grid.rows(), grid.cols()}, rng, blocks);
      int offset = static_cast<int>(pick(rng, static_cast<std::uint64_t>(palette)));
      auto colors = color_blocks(blocks, palette, offset);
      if (!colors) continue;

      Colorization out{grid.rows(), grid.cols(),
                       std::vector<std::uint8_t>(static_cast<std::size_t>(grid.cell_count()))};
      for (std::size_t b = 0; b < blocks.size(); ++b) {
        const Rect& r = blocks[b];
        for (int row = r.row; row < r.row + r.height; ++row) {
          for (int col = r.col; col < r.col + r.width; ++col) {
            out.cell_colors[static_cast<std::size_t>(row * grid.cols() + col)] =
                static_cast<std::uint8_t>((*colors)[b]);
          }
        }
      }
      return out;
    }
  }

  return checkerboard_bands(grid, rng);
}

}  // namespace spartan
