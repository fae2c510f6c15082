#include "spartan/credential.hpp"

#include <sodium.h>

#include <charconv>
#include <fstream>

#include "spartan/error.hpp"

namespace spartan {

bool valid_username(std::string_view username) {
  if (username.empty() || username.size() > 256) return false;
  for (char ch : username) {
    if (ch == ':' || ch == '\n' || ch == '\r' || ch == '\0') return false;
  }
  return true;
}

CredentialRecord register_credential(std::string username, const Placement& p,
                                     const KdfParams& params) {
  if (!valid_username(username)) {
    throw Error(username.empty() ? ErrorCode::EmptyUsername : ErrorCode::ParseError,
                "username must be non-empty and free of ':' and newlines");
  }
  CredentialRecord rec;
  rec.username = std::move(username);
  rec.kdf = params;
  rec.salt = random_salt();
  rec.hash = hash_password(p, rec.salt, params);
  rec.grid = GridSummary::of(p.grid());
  return rec;
}

bool verify(const Placement& p, const CredentialRecord& rec) {
  if (rec.kdf_id != kKdfId) return false;
  try {
    HashBytes candidate = hash_password(p, rec.salt, rec.kdf);
    return constant_time_equal(candidate, rec.hash);
  } catch (const Error&) {
    return false;
  }
}

std::string base64_encode(std::span<const std::uint8_t> bytes) {
  const std::size_t len =
      sodium_base64_encoded_len(bytes.size(), sodium_base64_VARIANT_ORIGINAL);
  std::string out(len, '\0');
  sodium_bin2base64(out.data(), out.size(), bytes.data(), bytes.size(),
                    sodium_base64_VARIANT_ORIGINAL);
  out.resize(len - 1);  // drop the terminator
  return out;
}

std::vector<std::uint8_t> base64_decode(std::string_view text) {
  std::vector<std::uint8_t> out(text.size() / 4 * 3 + 3);
  std::size_t written = 0;
  const char* end = nullptr;
  if (sodium_base642bin(out.data(), out.size(), text.data(), text.size(), nullptr,
                        &written, &end, sodium_base64_VARIANT_ORIGINAL) != 0 ||
      end != text.data() + text.size()) {
    std::size_t at = end ? static_cast<std::size_t>(end - text.data()) : 0;
    throw ParseError(at, "invalid base64");
  }
  out.resize(written);
  return out;
}

std::string format_record(const CredentialRecord& rec) {
  std::string out;
  out += rec.username;
  out += ':';
  out += rec.kdf_id;
  out += ':';
  out += std::to_string(rec.kdf.memory_kib) + ',' + std::to_string(rec.kdf.iterations) +
         ',' + std::to_string(rec.kdf.parallelism);
  out += ':';
  out += base64_encode(rec.salt);
  out += ':';
  out += base64_encode(rec.hash);
  out += ':';
  out += std::to_string(rec.grid.rows) + ',' + std::to_string(rec.grid.cols) + ',' +
         std::to_string(rec.grid.palette_size) + ',' + std::to_string(rec.grid.color_seed);
  return out;
}

namespace {

struct Field {
  std::string_view text;
  std::size_t offset;
};

std::vector<Field> split(std::string_view s, char sep, std::size_t base) {
  std::vector<Field> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back({s.substr(start), base + start});
      return out;
    }
    out.push_back({s.substr(start, pos - start), base + start});
    start = pos + 1;
  }
}

template <typename T>
T parse_number(const Field& f, const char* what) {
  T value{};
  auto [ptr, ec] = std::from_chars(f.text.data(), f.text.data() + f.text.size(), value);
  if (ec != std::errc{} || ptr != f.text.data() + f.text.size() || f.text.empty()) {
    throw ParseError(f.offset, std::string("invalid ") + what);
  }
  return value;
}

std::vector<std::uint8_t> decode_field(const Field& f) {
  try {
    return base64_decode(f.text);
  } catch (const ParseError& e) {
    throw ParseError(f.offset + e.offset(), "invalid base64");
  }
}

}  // namespace

CredentialRecord parse_record(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  auto fields = split(line, ':', 0);
  if (fields.size() != 6) {
    throw ParseError(0, "expected 6 colon-separated fields, got " +
                            std::to_string(fields.size()));
  }
  CredentialRecord rec;
  rec.username = std::string(fields[0].text);
  if (!valid_username(rec.username)) {
    throw ParseError(fields[0].offset, "empty username");
  }
  rec.kdf_id = std::string(fields[1].text);
  if (rec.kdf_id.empty()) throw ParseError(fields[1].offset, "empty kdf id");

  auto params = split(fields[2].text, ',', fields[2].offset);
  if (params.size() != 3) throw ParseError(fields[2].offset, "expected m,i,p");
  rec.kdf.memory_kib = parse_number<std::uint32_t>(params[0], "memory");
  rec.kdf.iterations = parse_number<std::uint32_t>(params[1], "iterations");
  rec.kdf.parallelism = parse_number<std::uint32_t>(params[2], "parallelism");

  auto salt = decode_field(fields[3]);
  if (salt.size() != kSaltBytes) throw ParseError(fields[3].offset, "salt must be 16 bytes");
  std::copy(salt.begin(), salt.end(), rec.salt.begin());

  rec.hash = decode_field(fields[4]);
  if (rec.kdf_id == kKdfId && rec.hash.size() != kHashBytes) {
    throw ParseError(fields[4].offset, "argon2id hash must be 32 bytes");
  }

  auto grid = split(fields[5].text, ',', fields[5].offset);
  if (grid.size() != 4) throw ParseError(fields[5].offset, "expected rows,cols,palette,seed");
  rec.grid.rows = parse_number<int>(grid[0], "rows");
  rec.grid.cols = parse_number<int>(grid[1], "cols");
  rec.grid.palette_size = parse_number<int>(grid[2], "palette");
  rec.grid.color_seed = parse_number<std::uint64_t>(grid[3], "seed");
  return rec;
}

std::vector<CredentialRecord> read_credential_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::BadCredFile, "cannot open credential file " + path.string());
  }
  std::vector<CredentialRecord> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    try {
      out.push_back(parse_record(line));
    } catch (const ParseError& e) {
      throw Error(ErrorCode::BadCredFile,
                  path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace spartan
