#include "spartan/entry_session.hpp"

#include <algorithm>

#include "spartan/error.hpp"

namespace spartan {

EntrySession::EntrySession(GridSpec grid)
    : grid_(std::move(grid)),
      cells_(static_cast<std::size_t>(grid_.cell_count()), '\0') {}

std::optional<char> EntrySession::at(Coord c) const {
  if (!grid_.contains(c)) {
    throw Error(ErrorCode::OutOfBounds, "cell outside the grid");
  }
  char ch = cells_[static_cast<std::size_t>(grid_.index_of(c))];
  if (ch == '\0') return std::nullopt;
  return ch;
}

EntrySession& EntrySession::set_cursor(Coord c) {
  if (!grid_.contains(c)) {
    throw Error(ErrorCode::OutOfBounds, "cursor outside the grid");
  }
  cursor_ = c;
  return *this;
}

EntrySession& EntrySession::set_direction(Direction d) noexcept {
  direction_ = d;
  return *this;
}

EntrySession& EntrySession::erase_at(Coord c) {
  if (!grid_.contains(c)) {
    throw Error(ErrorCode::OutOfBounds, "cell outside the grid");
  }
  cells_[static_cast<std::size_t>(grid_.index_of(c))] = '\0';
  return *this;
}

EntrySession& EntrySession::input_char(char ch) {
  if (!cursor_) {
    throw Error(ErrorCode::NoCursor, "select a starting cell before typing");
  }
  if (ch == ' ' || !grid_.allows(ch)) {
    throw Error(ErrorCode::BadChar,
                std::string("character '") + ch + "' not in alphabet");
  }
  cells_[static_cast<std::size_t>(grid_.index_of(*cursor_))] = ch;
  cursor_ = advance(grid_, *cursor_, direction_);
  return *this;
}

EntrySession& EntrySession::input_text(std::string_view text) {
  for (char ch : text) input_char(ch);
  return *this;
}

Placement EntrySession::placement() const {
  std::vector<Entry> entries;
  for (int i = 0; i < grid_.cell_count(); ++i) {
    char ch = cells_[static_cast<std::size_t>(i)];
    if (ch != '\0') entries.push_back({grid_.coord_at(i), ch});
  }
  return Placement(grid_, std::move(entries));
}

std::size_t EntrySession::filled() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(cells_.begin(), cells_.end(), [](char c) { return c != '\0'; }));
}

}  // namespace spartan
