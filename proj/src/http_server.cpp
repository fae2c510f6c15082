#include "spartan/http_server.hpp"

#include <httplib.h>

#include "spartan/error.hpp"

namespace spartan {
namespace {

void send(httplib::Response& res, const ApiResponse& api) {
  res.status = api.status;
  res.set_header("Cache-Control", "no-store");
  res.set_content(api.body.dump(), "application/json");
}

}  // namespace

HttpServer::HttpServer(AuthService& service, std::optional<std::filesystem::path> static_dir)
    : service_(service), server_(std::make_unique<httplib::Server>()) {
  server_->Get("/api/grid", [this](const httplib::Request& req, httplib::Response& res) {
    send(res, service_.get_grid(req.get_param_value("username")));
  });
  server_->Post("/api/register", [this](const httplib::Request& req, httplib::Response& res) {
    send(res, service_.register_user(req.body));
  });
  server_->Post("/api/login", [this](const httplib::Request& req, httplib::Response& res) {
    send(res, service_.login(req.body));
  });
  server_->set_exception_handler(
      [](const httplib::Request&, httplib::Response& res, std::exception_ptr) {
        send(res, {500, {{"error", "internal error"}}});
      });
  if (static_dir && !server_->set_mount_point("/", static_dir->string())) {
    throw Error(ErrorCode::Io, "static directory not found: " + static_dir->string());
  }
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) {
    int bound = server_->bind_to_any_port(host);
    if (bound < 0) throw Error(ErrorCode::Io, "cannot bind " + host);
    return bound;
  }
  if (!server_->bind_to_port(host, port)) {
    throw Error(ErrorCode::Io, "cannot bind " + host + ":" + std::to_string(port));
  }
  return port;
}

void HttpServer::listen() { server_->listen_after_bind(); }

void HttpServer::stop() {
  if (server_) server_->stop();
}

void HttpServer::wait_until_ready() const { server_->wait_until_ready(); }

}  // namespace spartan
