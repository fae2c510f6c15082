#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "spartan/grid.hpp"
#include "spartan/kdf.hpp"

namespace spartan {

/// The grid parameters a verifier needs; the alphabet is deployment config
/// and is not stored per record.
struct GridSummary {
  int rows = 12;
  int cols = 12;
  int palette_size = 6;
  std::uint64_t color_seed = 0;

  GridSpec to_grid(std::string alphabet) const {
    return GridSpec(rows, cols, std::move(alphabet), palette_size, color_seed);
  }
  static GridSummary of(const GridSpec& g) {
    return {g.rows(), g.cols(), g.palette_size(), g.color_seed()};
  }

  bool operator==(const GridSummary&) const = default;
};

struct CredentialRecord {
  std::string username;
  std::string kdf_id{kKdfId};
  KdfParams kdf;
  Salt salt{};
  HashBytes hash;
  GridSummary grid;

  bool operator==(const CredentialRecord&) const = default;
};

/// Usernames are stored verbatim in a colon-separated line.
bool valid_username(std::string_view username);

/// Hashes `p` under a fresh random salt.
CredentialRecord register_credential(std::string username, const Placement& p,
                                     const KdfParams& params);

/// Recomputes the hash with the record's salt and parameters and compares in
/// constant time. Never throws for a well-formed record.
bool verify(const Placement& p, const CredentialRecord& rec);

/// `username:kdf_id:m,i,p:salt_b64:hash_b64:rows,cols,palette,seed`
std::string format_record(const CredentialRecord& rec);
/// Throws ParseError with the byte offset of the offending field.
CredentialRecord parse_record(std::string_view line);

/// Reads a whole store; blank lines are skipped. Throws BadCredFile naming
/// the line on any malformed record.
std::vector<CredentialRecord> read_credential_file(const std::filesystem::path& path);

std::string base64_encode(std::span<const std::uint8_t> bytes);
/// Throws ParseError on invalid input.
std::vector<std::uint8_t> base64_decode(std::string_view text);

}  // namespace spartan
