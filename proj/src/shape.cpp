#include "spartan/shape.hpp"

#include <algorithm>
#include <numeric>

#include "spartan/error.hpp"

namespace spartan {

std::string_view to_string(ShapeKind kind) {
  switch (kind) {
    case ShapeKind::StraightLine: return "StraightLine";
    case ShapeKind::Block: return "Block";
    case ShapeKind::Snake: return "Snake";
    case ShapeKind::Segments: return "Segments";
    case ShapeKind::Points: return "Points";
  }
  return "Points";
}

std::string_view to_string(Orientation o) {
  switch (o) {
    case Orientation::Horizontal: return "horizontal";
    case Orientation::Vertical: return "vertical";
    case Orientation::Diagonal: return "diagonal";
  }
  return "horizontal";
}

namespace {

constexpr long kPathSearchBudget = 2'000'000;

// Membership view of a cell subset.
class CellSet {
 public:
  CellSet(const GridSpec& grid, const std::vector<Coord>& cells)
      : grid_(grid), cells_(cells), member_(static_cast<std::size_t>(grid.cell_count()), -1) {
    for (std::size_t i = 0; i < cells_.size(); ++i) {
      member_[static_cast<std::size_t>(grid_.index_of(cells_[i]))] = static_cast<int>(i);
    }
  }

  const GridSpec& grid() const { return grid_; }
  const std::vector<Coord>& cells() const { return cells_; }
  std::size_t size() const { return cells_.size(); }
  int slot(Coord c) const { return member_[static_cast<std::size_t>(grid_.index_of(c))]; }
  bool has(Coord c) const { return slot(c) >= 0; }

  // Distinct in-set neighbours of cell `i`, in direction order.
  std::vector<int> neighbours(int i) const {
    std::vector<int> out;
    for (Direction d : kAllDirections) {
      Coord n = advance(grid_, cells_[static_cast<std::size_t>(i)], d);
      int s = slot(n);
      if (s >= 0 && s != i && std::find(out.begin(), out.end(), s) == out.end()) {
        out.push_back(s);
      }
    }
    return out;
  }

 private:
  const GridSpec& grid_;
  const std::vector<Coord>& cells_;
  std::vector<int> member_;
};

struct Line {
  Direction dir;
  Coord first;
  Coord last;
};

// Cells form one run along `dir` (or a full wrapped orbit of it).
std::optional<Line> line_along(const CellSet& set, Direction dir) {
  const GridSpec& g = set.grid();
  const std::size_t n = set.size();
  std::optional<Coord> start;
  for (Coord c : set.cells()) {
    if (!set.has(advance(g, c, opposite(dir)))) {
      if (start) return std::nullopt;  // more than one run
      start = c;
    }
  }
  const bool cyclic = !start;
  if (cyclic) start = set.cells().front();

  std::vector<bool> visited(n, false);
  Coord cur = *start;
  for (std::size_t k = 0; k < n; ++k) {
    int s = set.slot(cur);
    if (s < 0 || visited[static_cast<std::size_t>(s)]) return std::nullopt;
    visited[static_cast<std::size_t>(s)] = true;
    if (k + 1 < n) cur = advance(g, cur, dir);
  }
  if (cyclic && advance(g, cur, dir) != *start) return std::nullopt;
  return Line{dir, *start, cur};
}

std::optional<Line> straight_line(const CellSet& set) {
  for (Direction d : {Direction::E, Direction::S, Direction::SE, Direction::NE}) {
    if (auto line = line_along(set, d)) return line;
  }
  return std::nullopt;
}

Orientation orientation_of(Direction d) {
  switch (d) {
    case Direction::E:
    case Direction::W: return Orientation::Horizontal;
    case Direction::N:
    case Direction::S: return Orientation::Vertical;
    default: return Orientation::Diagonal;
  }
}

// A set of residues mod `dim` forms one cyclic interval.
bool cyclic_interval(const std::vector<bool>& present, int dim) {
  int count = 0;
  int gaps = 0;
  for (int v = 0; v < dim; ++v) {
    if (!present[static_cast<std::size_t>(v)]) continue;
    ++count;
    if (!present[static_cast<std::size_t>((v + 1) % dim)]) ++gaps;
  }
  return count == dim || gaps == 1;
}

bool is_block(const CellSet& set) {
  const GridSpec& g = set.grid();
  std::vector<bool> rows(static_cast<std::size_t>(g.rows()), false);
  std::vector<bool> cols(static_cast<std::size_t>(g.cols()), false);
  for (Coord c : set.cells()) {
    rows[static_cast<std::size_t>(c.row)] = true;
    cols[static_cast<std::size_t>(c.col)] = true;
  }
  auto height = std::count(rows.begin(), rows.end(), true);
  auto width = std::count(cols.begin(), cols.end(), true);
  if (height < 2 || width < 2) return false;
  if (static_cast<std::size_t>(height * width) != set.size()) return false;
  return cyclic_interval(rows, g.rows()) && cyclic_interval(cols, g.cols());
}

std::vector<std::vector<int>> components(const CellSet& set) {
  const std::size_t n = set.size();
  std::vector<int> label(n, -1);
  std::vector<std::vector<int>> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (label[i] >= 0) continue;
    std::vector<int> comp{static_cast<int>(i)};
    label[i] = static_cast<int>(out.size());
    for (std::size_t k = 0; k < comp.size(); ++k) {
      for (int nb : set.neighbours(comp[k])) {
        if (label[static_cast<std::size_t>(nb)] < 0) {
          label[static_cast<std::size_t>(nb)] = static_cast<int>(out.size());
          comp.push_back(nb);
        }
      }
    }
    out.push_back(std::move(comp));
  }
  return out;
}

struct SnakePath {
  std::vector<int> order;
  int changes = 0;
};

// Depth-first search for a Hamiltonian path minimising direction changes.
class SnakeSearch {
 public:
  explicit SnakeSearch(const CellSet& set) : set_(set) {
    const std::size_t n = set.size();
    adj_.resize(n);
    for (std::size_t i = 0; i < n; ++i) adj_[i] = set.neighbours(static_cast<int>(i));
    visited_.assign(n, false);
  }

  std::optional<SnakePath> run() {
    const std::size_t n = set_.size();
    auto leaves = std::count_if(adj_.begin(), adj_.end(),
                                [](const auto& a) { return a.size() <= 1; });
    if (leaves > 2) return std::nullopt;
    for (const auto& a : adj_) {
      if (a.empty()) return std::nullopt;
    }
    for (std::size_t s = 0; s < n && budget_ > 0; ++s) {
      // A degree-one cell must be an end; starting elsewhere is wasted.
      if (leaves > 0 && adj_[s].size() > 1) continue;
      path_.assign(1, static_cast<int>(s));
      visited_[s] = true;
      extend(std::nullopt, 0);
      visited_[s] = false;
      if (best_ && best_->changes == 0) break;
    }
    return best_;
  }

 private:
  void extend(std::optional<Step> last, int changes) {
    if (--budget_ < 0) return;
    if (best_ && changes >= best_->changes) return;
    if (path_.size() == set_.size()) {
      best_ = SnakePath{path_, changes};
      return;
    }
    const int here = path_.back();
    for (int nb : adj_[static_cast<std::size_t>(here)]) {
      if (visited_[static_cast<std::size_t>(nb)]) continue;
      auto step = step_between(set_.grid(), set_.cells()[static_cast<std::size_t>(here)],
                               set_.cells()[static_cast<std::size_t>(nb)]);
      int next_changes = changes + ((last && *step != *last) ? 1 : 0);
      visited_[static_cast<std::size_t>(nb)] = true;
      path_.push_back(nb);
      extend(step, next_changes);
      path_.pop_back();
      visited_[static_cast<std::size_t>(nb)] = false;
      if (budget_ < 0) return;
    }
  }

  const CellSet& set_;
  std::vector<std::vector<int>> adj_;
  std::vector<bool> visited_;
  std::vector<int> path_;
  std::optional<SnakePath> best_;
  long budget_ = kPathSearchBudget;
};

}  // namespace

ShapeClass classify(const Placement& p) {
  if (p.size() < 2) {
    throw Error(ErrorCode::TooShort, "classification needs at least two cells");
  }
  const GridSpec& g = p.grid();
  const std::vector<Coord> cells = p.cells();
  const CellSet set(g, cells);

  ShapeClass out;
  if (auto line = straight_line(set)) {
    out.kind = ShapeKind::StraightLine;
    out.orientation = orientation_of(line->dir);
    out.endpoints = std::pair{line->first, line->last};
    return out;
  }
  if (is_block(set)) {
    out.kind = ShapeKind::Block;
    return out;
  }
  if (auto snake = SnakeSearch(set).run(); snake && snake->changes >= 1) {
    out.kind = ShapeKind::Snake;
    out.direction_changes = snake->changes;
    out.endpoints = std::pair{cells[static_cast<std::size_t>(snake->order.front())],
                              cells[static_cast<std::size_t>(snake->order.back())]};
    return out;
  }

  auto comps = components(set);
  if (comps.size() >= 2) {
    bool all_lines = std::all_of(comps.begin(), comps.end(), [&](const std::vector<int>& comp) {
      if (comp.size() < 2) return false;
      std::vector<Coord> sub;
      for (int i : comp) sub.push_back(cells[static_cast<std::size_t>(i)]);
      std::sort(sub.begin(), sub.end());
      return straight_line(CellSet(g, sub)).has_value();
    });
    if (all_lines) {
      out.kind = ShapeKind::Segments;
      out.segment_count = static_cast<int>(comps.size());
      return out;
    }
  }
  out.kind = ShapeKind::Points;
  return out;
}

Coord infer_start(const Placement& p, const ShapeClass& cls) {
  (void)p;
  if ((cls.kind != ShapeKind::StraightLine && cls.kind != ShapeKind::Snake) ||
      !cls.endpoints) {
    throw Error(ErrorCode::NotAPath, "start inference needs a StraightLine or Snake");
  }
  return std::min(cls.endpoints->first, cls.endpoints->second);
}

int quadrant_of(const GridSpec& grid, Coord c) {
  int top = c.row < grid.rows() / 2 ? 0 : 1;
  int left = c.col < grid.cols() / 2 ? 0 : 1;
  return top * 2 + left;
}

bool on_edge(const GridSpec& grid, Coord c) {
  return c.row == 0 || c.col == 0 || c.row == grid.rows() - 1 || c.col == grid.cols() - 1;
}

CorpusStats corpus_stats(std::span<const Placement> corpus) {
  if (corpus.empty()) throw Error(ErrorCode::EmptyCorpus, "corpus is empty");
  const GridSpec& g = corpus.front().grid();

  CorpusStats stats;
  stats.rows = g.rows();
  stats.cols = g.cols();
  stats.placements = corpus.size();
  stats.heatmap.assign(static_cast<std::size_t>(g.cell_count()), 0);

  std::array<long, 4> quadrants{};
  long edge_starts = 0;
  long turns = 0;
  long snakes = 0;
  long segments = 0;
  long segment_placements = 0;

  for (const Placement& p : corpus) {
    if (p.grid().rows() != g.rows() || p.grid().cols() != g.cols()) {
      throw Error(ErrorCode::GridMismatch, "corpus mixes grid dimensions");
    }
    for (const Entry& e : p.entries()) {
      ++stats.heatmap[static_cast<std::size_t>(g.index_of(e.cell))];
    }
    if (p.size() < 2) {
      ++stats.too_short;
      continue;
    }
    ShapeClass cls = classify(p);
    ++stats.class_histogram[static_cast<std::size_t>(cls.kind)];
    if (cls.kind == ShapeKind::StraightLine || cls.kind == ShapeKind::Snake) {
      Coord start = infer_start(p, cls);
      ++quadrants[static_cast<std::size_t>(quadrant_of(g, start))];
      if (on_edge(g, start)) ++edge_starts;
      ++stats.path_starts;
    }
    if (cls.kind == ShapeKind::Snake) {
      turns += *cls.direction_changes;
      ++snakes;
    }
    if (cls.kind == ShapeKind::Segments) {
      segments += *cls.segment_count;
      ++segment_placements;
    }
  }

  if (stats.path_starts > 0) {
    const auto total = static_cast<double>(stats.path_starts);
    std::array<double, 4> q{};
    for (std::size_t i = 0; i < 4; ++i) q[i] = static_cast<double>(quadrants[i]) / total;
    stats.start_quadrant_fractions = q;
    double edge = static_cast<double>(edge_starts) / total;
    stats.edge_vs_center_fractions = std::array<double, 2>{edge, 1.0 - edge};
  }
  if (snakes > 0) {
    stats.mean_direction_changes = static_cast<double>(turns) / static_cast<double>(snakes);
  }
  if (segment_placements > 0) {
    stats.mean_segment_count =
        static_cast<double>(segments) / static_cast<double>(segment_placements);
  }
  return stats;
}

}  // namespace spartan
