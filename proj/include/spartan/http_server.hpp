#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "spartan/auth_service.hpp"

namespace httplib {
class Server;
}

namespace spartan {

/// JSON-over-HTTP front end for AuthService:
///   GET  /api/grid?username=U
///   POST /api/register  {"username":..,"tagged_password":..}
///   POST /api/login     {"username":..,"tagged_password":..}
/// Optionally serves a static directory (the browser widget) at "/".
class HttpServer {
 public:
  explicit HttpServer(AuthService& service,
                      std::optional<std::filesystem::path> static_dir = std::nullopt);
  ~HttpServer();

  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Port 0 picks a free port. Returns the bound port; throws Io on failure.
  int bind(const std::string& host, int port);
  /// Blocks until stop().
  void listen();
  void stop();
  void wait_until_ready() const;

 private:
  AuthService& service_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace spartan
