#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "spartan/grid.hpp"

namespace spartan {

inline constexpr std::string_view kKdfId = "argon2id";
inline constexpr std::size_t kSaltBytes = 16;
inline constexpr std::size_t kHashBytes = 32;

using Salt = std::array<std::uint8_t, kSaltBytes>;
using HashBytes = std::vector<std::uint8_t>;

/// Argon2id cost parameters. Memory is in KiB.
struct KdfParams {
  std::uint32_t memory_kib = 19456;
  std::uint32_t iterations = 2;
  std::uint32_t parallelism = 1;

  /// 19 MiB, 2 passes: the usual interactive-login setting.
  static KdfParams interactive() { return {19456, 2, 1}; }
  /// Smallest Argon2id cost accepted; for tests and cracking experiments.
  static KdfParams test_profile() { return {8, 1, 1}; }

  bool operator==(const KdfParams&) const = default;
};

/// "interactive" or "test". Throws KdfParamError for anything else.
KdfParams kdf_profile(std::string_view name);

/// Throws KdfParamError if the backend cannot run with `params`
/// (memory < 8 KiB, zero iterations, or parallelism other than 1).
void validate(const KdfParams& params);

/// Argon2id over the canonical form of `p`, 32-byte output.
HashBytes hash_password(const Placement& p, std::span<const std::uint8_t> salt,
                        const KdfParams& params);

/// Same KDF over arbitrary bytes; the cracker feeds canonical forms directly.
HashBytes hash_bytes(std::string_view input, std::span<const std::uint8_t> salt,
                     const KdfParams& params);

Salt random_salt();

/// Comparison time depends only on the lengths, not on where bytes differ.
bool constant_time_equal(std::span<const std::uint8_t> a,
                         std::span<const std::uint8_t> b);

}  // namespace spartan
