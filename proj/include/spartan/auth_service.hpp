#pragma once

#include <chrono>
#include <deque>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>

#include <json.hpp>

#include "spartan/credential.hpp"
#include "spartan/grid.hpp"
#include "spartan/kdf.hpp"

namespace spartan {

struct ServiceConfig {
  int rows = 12;
  int cols = 12;
  int palette_size = 6;
  std::string alphabet = default_alphabet();
  KdfParams kdf = KdfParams::interactive();
  std::filesystem::path store_path = "spartan_credentials.txt";
  std::size_t min_password_length = 8;
  int attempts_per_window = 10;
  std::chrono::seconds rate_window{60};
};

/// Append-only credential file with an in-memory index. Reads run
/// concurrently; appends are serialised.
class CredentialStore {
 public:
  /// Loads existing records; a missing file is an empty store.
  explicit CredentialStore(std::filesystem::path path);

  std::optional<CredentialRecord> find(const std::string& username) const;
  /// False (and nothing written) if the username already exists.
  bool append(const CredentialRecord& rec);
  std::size_t size() const;
  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
  mutable std::shared_mutex mutex_;
  std::map<std::string, CredentialRecord> records_;
};

struct ApiResponse {
  int status = 200;
  nlohmann::ordered_json body;
};

/// Transport-independent request handling; HttpServer maps routes onto it.
class AuthService {
 public:
  using Clock = std::function<std::chrono::steady_clock::time_point()>;

  explicit AuthService(ServiceConfig config, Clock clock = std::chrono::steady_clock::now);

  /// Grid for a username, registered or not.
  GridSpec grid_for(std::string_view username) const;

  ApiResponse get_grid(std::string_view username) const;
  ApiResponse register_user(std::string_view json_body);
  ApiResponse login(std::string_view json_body);

  const ServiceConfig& config() const noexcept { return config_; }
  const CredentialStore& store() const noexcept { return store_; }

 private:
  struct Attempts {
    long total = 0;
    std::deque<std::chrono::steady_clock::time_point> recent;
  };

  ServiceConfig config_;
  Clock clock_;
  CredentialStore store_;
  std::mutex register_mutex_;
  std::mutex attempts_mutex_;
  std::map<std::string, Attempts> attempts_;
};

}  // namespace spartan
