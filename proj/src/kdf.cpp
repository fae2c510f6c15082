#include "spartan/kdf.hpp"

#include <sodium.h>

#include <string>

#include "spartan/codec.hpp"
#include "spartan/error.hpp"

namespace spartan {
namespace {

void ensure_sodium() {
  static const bool ready = [] {
    if (sodium_init() < 0) {
      throw std::runtime_error("libsodium initialisation failed");
    }
    return true;
  }();
  (void)ready;
}

}  // namespace

KdfParams kdf_profile(std::string_view name) {
  if (name == "interactive") return KdfParams::interactive();
  if (name == "test") return KdfParams::test_profile();
  throw Error(ErrorCode::KdfParamError,
              "unknown KDF profile '" + std::string(name) + "'");
}

void validate(const KdfParams& params) {
  const auto memory_bytes = static_cast<unsigned long long>(params.memory_kib) * 1024ULL;
  if (memory_bytes < crypto_pwhash_argon2id_MEMLIMIT_MIN ||
      memory_bytes > crypto_pwhash_argon2id_MEMLIMIT_MAX) {
    throw Error(ErrorCode::KdfParamError, "argon2id memory out of range");
  }
  if (params.iterations < crypto_pwhash_argon2id_OPSLIMIT_MIN ||
      params.iterations > crypto_pwhash_argon2id_OPSLIMIT_MAX) {
    throw Error(ErrorCode::KdfParamError, "argon2id iterations out of range");
  }
  // libsodium runs a single lane.
  if (params.parallelism != 1) {
    throw Error(ErrorCode::KdfParamError, "argon2id parallelism must be 1");
  }
}

HashBytes hash_bytes(std::string_view input, std::span<const std::uint8_t> salt,
                     const KdfParams& params) {
  ensure_sodium();
  validate(params);
  if (salt.size() != crypto_pwhash_argon2id_SALTBYTES) {
    throw Error(ErrorCode::KdfParamError, "salt must be 16 bytes");
  }
  HashBytes out(kHashBytes);
  const auto memory_bytes = static_cast<std::size_t>(params.memory_kib) * 1024U;
  if (crypto_pwhash_argon2id(out.data(), out.size(), input.data(), input.size(),
                             salt.data(), params.iterations, memory_bytes,
                             crypto_pwhash_argon2id_ALG_ARGON2ID13) != 0) {
    throw Error(ErrorCode::KdfParamError, "argon2id failed (out of memory?)");
  }
  return out;
}

HashBytes hash_password(const Placement& p, std::span<const std::uint8_t> salt,
                        const KdfParams& params) {
  std::string canonical = to_canonical(p);
  HashBytes out = hash_bytes(canonical, salt, params);
  sodium_memzero(canonical.data(), canonical.size());
  return out;
}

Salt random_salt() {
  ensure_sodium();
  Salt salt{};
  randombytes_buf(salt.data(), salt.size());
  return salt;
}

bool constant_time_equal(std::span<const std::uint8_t> a,
                         std::span<const std::uint8_t> b) {
  ensure_sodium();
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  return sodium_memcmp(a.data(), b.data(), a.size()) == 0;
}

}  // namespace spartan
