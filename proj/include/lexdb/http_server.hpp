#ifndef LEXDB_HTTP_SERVER_HPP
#define LEXDB_HTTP_SERVER_HPP

#include <memory>
#include <string>

#include "lexdb/service.hpp"

namespace httplib {
class Server;
}

namespace lexdb {

// JSON-over-HTTP front end for a LexiconService.
class HttpServer {
 public:
  explicit HttpServer(LexiconService& service);
  ~HttpServer();

  // Port 0 picks a free port. Returns the bound port; throws on failure.
  int bind(const std::string& host, int port);
  // Blocks until stop().
  void listen();
  void stop();

 private:
  LexiconService& service_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace lexdb

#endif
