#include "lexdb/http_server.hpp"

#include "httplib.h"

namespace lexdb {

namespace {

void respond(httplib::Response& res, const ApiResponse& api) {
  res.status = api.status;
  res.set_content(api.body.dump(), "application/json");
}

ApiRequest to_api(const httplib::Request& req) {
  ApiRequest api;
  api.method = req.method;
  api.path = req.path;
  for (const auto& [key, value] : req.params) api.params[key] = value;
  return api;
}

}  // namespace

HttpServer::HttpServer(LexiconService& service) : service_(service), server_(std::make_unique<httplib::Server>()) {
  auto get = [this](const httplib::Request& req, httplib::Response& res) { respond(res, service_.handle(to_api(req))); };
  auto post = [this](const httplib::Request& req, httplib::Response& res) {
    ApiRequest api = to_api(req);
    try {
      api.body = nlohmann::json::parse(req.body.empty() ? std::string("{}") : req.body);
    } catch (const nlohmann::json::parse_error& e) {
      respond(res, error_response(ErrorCode::parse_error, e.what(), "body"));
      return;
    }
    respond(res, service_.handle(api));
  };
  server_->Get(R"(/.*)", get);
  server_->Post(R"(/.*)", post);
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) {
    int bound = server_->bind_to_any_port(host);
    if (bound < 0) throw LexError(ErrorCode::bad_request, "cannot bind to " + host);
    return bound;
  }
  if (!server_->bind_to_port(host, port))
    throw LexError(ErrorCode::bad_request, "cannot bind to " + host + ":" + std::to_string(port));
  return port;
}

void HttpServer::listen() { server_->listen_after_bind(); }

void HttpServer::stop() {
  if (server_->is_running()) server_->stop();
}

}  // namespace lexdb
