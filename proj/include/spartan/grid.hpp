#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace spartan {

inline constexpr int kMaxCells = 4096;

struct Coord {
  int row = 0;
  int col = 0;

  auto operator<=>(const Coord&) const = default;
};

enum class Direction : std::uint8_t { N, NE, E, SE, S, SW, W, NW };

inline constexpr std::array<Direction, 8> kAllDirections = {
    Direction::N, Direction::NE, Direction::E, Direction::SE,
    Direction::S, Direction::SW, Direction::W, Direction::NW};

struct Step {
  int drow = 0;
  int dcol = 0;

  bool operator==(const Step&) const = default;
};

Step step_of(Direction dir);
std::string_view to_string(Direction dir);
std::optional<Direction> parse_direction(std::string_view name);
Direction opposite(Direction dir);

/// The 94 printable ASCII characters excluding space.
std::string default_alphabet();

/// Grid dimensions, permitted characters and colorization parameters.
///
/// Construction validates: rows, cols >= 2; rows * cols <= 4096; the alphabet
/// is non-empty, has no space and no duplicates; palette_size >= 1.
class GridSpec {
 public:
  GridSpec(int rows, int cols, std::string alphabet, int palette_size,
           std::uint64_t color_seed);

  /// 12x12, palette of 6, default alphabet.
  static GridSpec standard(std::uint64_t color_seed = 0);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  int cell_count() const noexcept { return rows_ * cols_; }
  const std::string& alphabet() const noexcept { return alphabet_; }
  int palette_size() const noexcept { return palette_size_; }
  std::uint64_t color_seed() const noexcept { return color_seed_; }

  bool contains(Coord c) const noexcept {
    return c.row >= 0 && c.row < rows_ && c.col >= 0 && c.col < cols_;
  }
  bool allows(char ch) const noexcept {
    return allowed_[static_cast<unsigned char>(ch)];
  }
  int index_of(Coord c) const noexcept { return c.row * cols_ + c.col; }
  Coord coord_at(int index) const noexcept {
    return {index / cols_, index % cols_};
  }

  /// Same geometry and alphabet, different seed.
  GridSpec with_seed(std::uint64_t seed) const;

  bool operator==(const GridSpec& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ &&
           alphabet_ == other.alphabet_ &&
           palette_size_ == other.palette_size_ &&
           color_seed_ == other.color_seed_;
  }

 private:
  int rows_;
  int cols_;
  std::string alphabet_;
  int palette_size_;
  std::uint64_t color_seed_;
  std::array<bool, 256> allowed_{};
};

/// One step in `dir` with each axis wrapped modulo its dimension.
Coord advance(const GridSpec& grid, Coord from, Direction dir);

/// Wrap-aware 8-adjacency: the cells differ by at most one step per axis,
/// modulo the grid dimensions, and are not equal.
bool adjacent(const GridSpec& grid, Coord a, Coord b);

/// Step taken from `a` to reach the 8-adjacent cell `b`, wrap-aware.
std::optional<Step> step_between(const GridSpec& grid, Coord a, Coord b);

/// FNV-1a 64 over the username bytes followed by the low byte of rows and
/// the low byte of cols.
std::uint64_t seed_from_username(std::string_view username, int rows, int cols);

struct Entry {
  Coord cell;
  char ch = '\0';

  auto operator<=>(const Entry&) const = default;
};

/// A SPARTAN password: characters pinned to distinct cells of a grid.
/// Entries are kept in row-major order.
class Placement {
 public:
  /// Throws InvalidPlacement on duplicate or out-of-bounds cells,
  /// BadChar on characters outside the alphabet.
  Placement(GridSpec grid, std::vector<Entry> entries);

  const GridSpec& grid() const noexcept { return grid_; }
  const std::vector<Entry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  std::optional<char> at(Coord c) const;
  std::vector<Coord> cells() const;

  /// Same dimensions and same (cell, character) set.
  bool operator==(const Placement& other) const {
    return grid_.rows() == other.grid_.rows() &&
           grid_.cols() == other.grid_.cols() && entries_ == other.entries_;
  }

 private:
  GridSpec grid_;
  std::vector<Entry> entries_;
};

}  // namespace spartan
