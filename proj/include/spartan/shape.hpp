#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "spartan/grid.hpp"

namespace spartan {

enum class ShapeKind { StraightLine, Block, Snake, Segments, Points };
enum class Orientation { Horizontal, Vertical, Diagonal };

inline constexpr std::array<ShapeKind, 5> kAllShapeKinds = {
    ShapeKind::StraightLine, ShapeKind::Block, ShapeKind::Snake,
    ShapeKind::Segments, ShapeKind::Points};

std::string_view to_string(ShapeKind kind);
std::string_view to_string(Orientation o);

struct ShapeClass {
  ShapeKind kind = ShapeKind::Points;
  std::optional<Orientation> orientation;      // StraightLine
  std::optional<int> direction_changes;        // Snake
  std::optional<int> segment_count;            // Segments
  std::optional<std::pair<Coord, Coord>> endpoints;  // StraightLine, Snake

  bool operator==(const ShapeClass&) const = default;
};

/// First match in the order StraightLine, Block, Snake, Segments, Points.
/// Adjacency is 8-directional and wraps around the grid edges.
///
///  - StraightLine: the cells are consecutive along one direction.
///  - Block: the cells exactly fill a rectangle at least 2x2.
///  - Snake: some ordering of the cells steps between 8-adjacent cells; the
///    reported path is the one with the fewest direction changes (first in
///    row-major/direction order on ties).
///  - Segments: two or more connected components, each a straight line of
///    at least two cells.
///  - Points: anything else.
///
/// Throws TooShort for fewer than two entries.
ShapeClass classify(const Placement& p);

/// Likely starting cell of a StraightLine or Snake: of the two path ends,
/// the topmost, then leftmost. Throws NotAPath for other classes.
Coord infer_start(const Placement& p, const ShapeClass& cls);

struct CorpusStats {
  int rows = 0;
  int cols = 0;
  std::size_t placements = 0;
  std::size_t too_short = 0;            // fewer than two cells; not classified
  std::vector<long> heatmap;            // row-major occupancy counts
  std::array<long, 5> class_histogram{};  // indexed like kAllShapeKinds
  std::size_t path_starts = 0;          // StraightLine + Snake placements
  // Quadrants in reading order: top-left, top-right, bottom-left,
  // bottom-right. Empty when the corpus has no path placements.
  std::optional<std::array<double, 4>> start_quadrant_fractions;
  std::optional<std::array<double, 2>> edge_vs_center_fractions;
  std::optional<double> mean_direction_changes;
  std::optional<double> mean_segment_count;
};

/// Quadrant index 0..3 of a cell, splitting at rows/2 and cols/2.
int quadrant_of(const GridSpec& grid, Coord c);
bool on_edge(const GridSpec& grid, Coord c);

/// Throws EmptyCorpus, or GridMismatch if grid dimensions differ.
CorpusStats corpus_stats(std::span<const Placement> corpus);

}  // namespace spartan
