#include "spartan/grid.hpp"

#include <algorithm>

#include "spartan/error.hpp"

namespace spartan {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidGrid: return "InvalidGrid";
    case ErrorCode::OutOfBounds: return "OutOfBounds";
    case ErrorCode::NoCursor: return "NoCursor";
    case ErrorCode::BadChar: return "BadChar";
    case ErrorCode::InvalidPlacement: return "InvalidPlacement";
    case ErrorCode::EmptyUsername: return "EmptyUsername";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::KdfParamError: return "KdfParamError";
    case ErrorCode::LengthExceedsCells: return "LengthExceedsCells";
    case ErrorCode::KExceedsN: return "KExceedsN";
    case ErrorCode::TooShort: return "TooShort";
    case ErrorCode::NotAPath: return "NotAPath";
    case ErrorCode::EmptyCorpus: return "EmptyCorpus";
    case ErrorCode::TooLong: return "TooLong";
    case ErrorCode::NonEnumerableStrategy: return "NonEnumerableStrategy";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::BadCredFile: return "BadCredFile";
    case ErrorCode::EmptyDictionary: return "EmptyDictionary";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

Step step_of(Direction dir) {
  switch (dir) {
    case Direction::N: return {-1, 0};
    case Direction::NE: return {-1, 1};
    case Direction::E: return {0, 1};
    case Direction::SE: return {1, 1};
    case Direction::S: return {1, 0};
    case Direction::SW: return {1, -1};
    case Direction::W: return {0, -1};
    case Direction::NW: return {-1, -1};
  }
  return {0, 1};
}

std::string_view to_string(Direction dir) {
  switch (dir) {
    case Direction::N: return "N";
    case Direction::NE: return "NE";
    case Direction::E: return "E";
    case Direction::SE: return "SE";
    case Direction::S: return "S";
    case Direction::SW: return "SW";
    case Direction::W: return "W";
    case Direction::NW: return "NW";
  }
  return "E";
}

std::optional<Direction> parse_direction(std::string_view name) {
  for (Direction d : kAllDirections) {
    if (to_string(d) == name) return d;
  }
  return std::nullopt;
}

Direction opposite(Direction dir) {
  return static_cast<Direction>((static_cast<int>(dir) + 4) % 8);
}

std::string default_alphabet() {
  std::string out;
  for (char c = '!'; c <= '~'; ++c) out.push_back(c);
  return out;
}

GridSpec::GridSpec(int rows, int cols, std::string alphabet, int palette_size,
                   std::uint64_t color_seed)
    : rows_(rows),
      cols_(cols),
      alphabet_(std::move(alphabet)),
      palette_size_(palette_size),
      color_seed_(color_seed) {
  if (rows_ < 2 || cols_ < 2) {
    throw Error(ErrorCode::InvalidGrid, "grid needs at least 2 rows and 2 cols");
  }
  if (rows_ > kMaxCells || cols_ > kMaxCells || rows_ * cols_ > kMaxCells) {
    throw Error(ErrorCode::InvalidGrid, "grid exceeds 4096 cells");
  }
  if (palette_size_ < 1 || palette_size_ > 255) {
    throw Error(ErrorCode::InvalidGrid, "palette_size must be in [1, 255]");
  }
  if (alphabet_.empty()) {
    throw Error(ErrorCode::InvalidGrid, "alphabet is empty");
  }
  for (char ch : alphabet_) {
    auto idx = static_cast<unsigned char>(ch);
    if (ch == ' ') {
      throw Error(ErrorCode::InvalidGrid, "alphabet may not contain space");
    }
    if (ch == '\0' || ch == '\n' || ch == '\r') {
      throw Error(ErrorCode::InvalidGrid, "alphabet contains a control character");
    }
    if (allowed_[idx]) {
      throw Error(ErrorCode::InvalidGrid,
                  std::string("duplicate alphabet character '") + ch + "'");
    }
    allowed_[idx] = true;
  }
}

GridSpec GridSpec::standard(std::uint64_t color_seed) {
  return GridSpec(12, 12, default_alphabet(), 6, color_seed);
}

GridSpec GridSpec::with_seed(std::uint64_t seed) const {
  GridSpec copy = *this;
  copy.color_seed_ = seed;
  return copy;
}

namespace {

int wrap(int value, int dim) {
  int r = value % dim;
  return r < 0 ? r + dim : r;
}

// Signed one-step delta along an axis of length `dim`, preferring the
// non-wrapping reading when both exist.
std::optional<int> axis_delta(int from, int to, int dim) {
  int raw = to - from;
  if (raw >= -1 && raw <= 1) return raw;
  if (raw == dim - 1) return -1;
  if (raw == -(dim - 1)) return 1;
  return std::nullopt;
}

}  // namespace

Coord advance(const GridSpec& grid, Coord from, Direction dir) {
  Step s = step_of(dir);
  return {wrap(from.row + s.drow, grid.rows()), wrap(from.col + s.dcol, grid.cols())};
}

std::optional<Step> step_between(const GridSpec& grid, Coord a, Coord b) {
  if (a == b) return std::nullopt;
  auto dr = axis_delta(a.row, b.row, grid.rows());
  auto dc = axis_delta(a.col, b.col, grid.cols());
  if (!dr || !dc) return std::nullopt;
  return Step{*dr, *dc};
}

bool adjacent(const GridSpec& grid, Coord a, Coord b) {
  return step_between(grid, a, b).has_value();
}

std::uint64_t seed_from_username(std::string_view username, int rows, int cols) {
  if (username.empty()) {
    throw Error(ErrorCode::EmptyUsername, "username must not be empty");
  }
  constexpr std::uint64_t kOffsetBasis = 14695981039346656037ULL;
  constexpr std::uint64_t kPrime = 1099511628211ULL;
  std::uint64_t hash = kOffsetBasis;
  auto mix = [&](std::uint8_t byte) {
    hash ^= byte;
    hash *= kPrime;
  };
  for (char ch : username) mix(static_cast<std::uint8_t>(ch));
  mix(static_cast<std::uint8_t>(rows & 0xFF));
  mix(static_cast<std::uint8_t>(cols & 0xFF));
  return hash;
}

Placement::Placement(GridSpec grid, std::vector<Entry> entries)
    : grid_(std::move(grid)), entries_(std::move(entries)) {
  for (const Entry& e : entries_) {
    if (!grid_.contains(e.cell)) {
      throw Error(ErrorCode::InvalidPlacement, "cell outside the grid");
    }
    if (!grid_.allows(e.ch)) {
      throw Error(ErrorCode::BadChar,
                  std::string("character '") + e.ch + "' not in alphabet");
    }
  }
  std::sort(entries_.begin(), entries_.end());
  auto dup = std::adjacent_find(entries_.begin(), entries_.end(),
                                [](const Entry& a, const Entry& b) {
                                  return a.cell == b.cell;
                                });
  if (dup != entries_.end()) {
    throw Error(ErrorCode::InvalidPlacement, "two characters share a cell");
  }
}

std::optional<char> Placement::at(Coord c) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), c,
      [](const Entry& e, const Coord& key) { return e.cell < key; });
  if (it != entries_.end() && it->cell == c) return it->ch;
  return std::nullopt;
}

std::vector<Coord> Placement::cells() const {
  std::vector<Coord> out;
  out.reserve(entries_.size());
  for (const Entry& e : entries_) out.push_back(e.cell);
  return out;
}

}  // namespace spartan
