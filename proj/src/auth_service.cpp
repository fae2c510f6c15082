#include "spartan/auth_service.hpp"

#include <fstream>

#include "spartan/codec.hpp"
#include "spartan/colorize.hpp"
#include "spartan/error.hpp"

namespace spartan {

CredentialStore::CredentialStore(std::filesystem::path path) : path_(std::move(path)) {
  if (!std::filesystem::exists(path_)) return;
  for (CredentialRecord& rec : read_credential_file(path_)) {
    std::string name = rec.username;
    records_.emplace(std::move(name), std::move(rec));
  }
}

std::optional<CredentialRecord> CredentialStore::find(const std::string& username) const {
  std::shared_lock lock(mutex_);
  auto it = records_.find(username);
  if (it == records_.end()) return std::nullopt;
  return it->second;
}

bool CredentialStore::append(const CredentialRecord& rec) {
  std::unique_lock lock(mutex_);
  if (records_.contains(rec.username)) return false;
  std::ofstream out(path_, std::ios::app);
  if (!out) throw Error(ErrorCode::Io, "cannot open credential store " + path_.string());
  out << format_record(rec) << '\n';
  out.flush();
  if (!out) throw Error(ErrorCode::Io, "write to credential store failed");
  records_.emplace(rec.username, rec);
  return true;
}

std::size_t CredentialStore::size() const {
  std::shared_lock lock(mutex_);
  return records_.size();
}

namespace {

ApiResponse error_response(int status, std::string_view message) {
  return {status, {{"error", std::string(message)}}};
}

struct Credentials {
  std::string username;
  std::string tagged;
};

std::optional<Credentials> parse_body(std::string_view body) {
  auto doc = nlohmann::json::parse(body, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) return std::nullopt;
  auto user = doc.find("username");
  auto pass = doc.find("tagged_password");
  if (user == doc.end() || pass == doc.end() || !user->is_string() || !pass->is_string()) {
    return std::nullopt;
  }
  return Credentials{user->get<std::string>(), pass->get<std::string>()};
}

}  // namespace

AuthService::AuthService(ServiceConfig config, Clock clock)
    : config_(std::move(config)), clock_(std::move(clock)), store_(config_.store_path) {
  validate(config_.kdf);
  // Fail fast on a bad grid configuration.
  (void)GridSpec(config_.rows, config_.cols, config_.alphabet, config_.palette_size, 0);
}

GridSpec AuthService::grid_for(std::string_view username) const {
  return GridSpec(config_.rows, config_.cols, config_.alphabet, config_.palette_size,
                  seed_from_username(username, config_.rows, config_.cols));
}

ApiResponse AuthService::get_grid(std::string_view username) const {
  if (username.empty()) return error_response(400, "username is required");
  const GridSpec grid = grid_for(username);
  const Colorization colors = colorize(grid);

  nlohmann::ordered_json body;
  body["rows"] = grid.rows();
  body["cols"] = grid.cols();
  body["palette_size"] = grid.palette_size();
  // Decimal string: a 64-bit seed does not survive a JavaScript number.
  body["color_seed"] = std::to_string(grid.color_seed());
  body["alphabet"] = grid.alphabet();
  body["cell_colors"] = colors.cell_colors;
  body["default_start"] = {{"row", 0}, {"col", 0}};
  body["default_direction"] = std::string(to_string(Direction::E));
  body["min_length"] = config_.min_password_length;
  return {200, std::move(body)};
}

ApiResponse AuthService::register_user(std::string_view json_body) {
  auto creds = parse_body(json_body);
  if (!creds) return error_response(400, "expected {username, tagged_password}");
  if (!valid_username(creds->username)) return error_response(400, "invalid username");

  std::optional<Placement> placement;
  try {
    placement = from_tagged(grid_for(creds->username), creds->tagged);
  } catch (const Error&) {
    return error_response(422, "password could not be parsed");
  }
  if (placement->size() < config_.min_password_length) {
    return error_response(422, "password needs at least " +
                                   std::to_string(config_.min_password_length) + " characters");
  }

  std::lock_guard lock(register_mutex_);
  if (store_.find(creds->username)) return error_response(409, "username already registered");
  CredentialRecord rec = register_credential(creds->username, *placement, config_.kdf);
  if (!store_.append(rec)) return error_response(409, "username already registered");
  return {201, {{"status", "registered"}, {"username", creds->username}}};
}

ApiResponse AuthService::login(std::string_view json_body) {
  auto creds = parse_body(json_body);
  if (!creds) return error_response(400, "expected {username, tagged_password}");
  if (!valid_username(creds->username)) return error_response(400, "invalid username");

  long attempt_count = 0;
  {
    std::lock_guard lock(attempts_mutex_);
    Attempts& a = attempts_[creds->username];
    const auto now = clock_();
    while (!a.recent.empty() && now - a.recent.front() >= config_.rate_window) {
      a.recent.pop_front();
    }
    if (static_cast<int>(a.recent.size()) >= config_.attempts_per_window) {
      return error_response(429, "too many attempts; try again later");
    }
    a.recent.push_back(now);
    attempt_count = ++a.total;
  }

  std::optional<Placement> placement;
  try {
    placement = from_tagged(grid_for(creds->username), creds->tagged);
  } catch (const Error&) {
    return error_response(422, "password could not be parsed");
  }

  bool ok = false;
  if (auto rec = store_.find(creds->username)) {
    ok = verify(*placement, *rec);
  } else {
    // Same KDF cost as a real check so timing does not reveal the account.
    static const Salt dummy_salt{};
    (void)hash_password(*placement, dummy_salt, config_.kdf);
  }
  nlohmann::ordered_json body{{"outcome", ok ? "success" : "failure"},
                              {"attempt_count", attempt_count}};
  return {ok ? 200 : 401, std::move(body)};
}

}  // namespace spartan
