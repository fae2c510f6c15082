#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "spartan/grid.hpp"

namespace spartan {

/// Live state of one password entry: cursor, typing direction and the cells
/// filled so far. Typing writes at the cursor, overwriting whatever is there,
/// then advances the cursor one wrapped step in the current direction.
///
/// No cursor is set on construction; callers supply their own default.
class EntrySession {
 public:
  explicit EntrySession(GridSpec grid);

  const GridSpec& grid() const noexcept { return grid_; }
  std::optional<Coord> cursor() const noexcept { return cursor_; }
  Direction direction() const noexcept { return direction_; }
  std::optional<char> at(Coord c) const;

  EntrySession& set_cursor(Coord c);
  EntrySession& set_direction(Direction d) noexcept;
  EntrySession& erase_at(Coord c);
  EntrySession& input_char(char ch);
  EntrySession& input_text(std::string_view text);

  Placement placement() const;
  std::size_t filled() const noexcept;

  bool operator==(const EntrySession& other) const {
    return grid_ == other.grid_ && cursor_ == other.cursor_ &&
           direction_ == other.direction_ && cells_ == other.cells_;
  }

 private:
  GridSpec grid_;
  std::optional<Coord> cursor_;
  Direction direction_ = Direction::E;
  std::vector<char> cells_;  // '\0' marks an empty cell
};

}  // namespace spartan
