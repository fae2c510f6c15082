#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace spartan {

enum class ErrorCode {
  InvalidGrid,
  OutOfBounds,
  NoCursor,
  BadChar,
  InvalidPlacement,
  EmptyUsername,
  ParseError,
  KdfParamError,
  LengthExceedsCells,
  KExceedsN,
  TooShort,
  NotAPath,
  EmptyCorpus,
  TooLong,
  NonEnumerableStrategy,
  BudgetExceeded,
  BadCredFile,
  EmptyDictionary,
  GridMismatch,
  InvalidArgument,
  Io,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse failure carrying the byte offset in the input where it was detected.
class ParseError : public Error {
 public:
  ParseError(std::size_t offset, const std::string& message)
      : Error(ErrorCode::ParseError,
              message + " (at byte " + std::to_string(offset) + ")"),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace spartan
