#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <thread>

#include "httplib.h"
#include "lexdb/fixtures.hpp"
#include "lexdb/http_server.hpp"

using namespace lexdb;
using nlohmann::json;

namespace {

class RunningServer {
 public:
  explicit RunningServer(ConceptStore store) : service_(std::move(store)), server_(service_) {
    port_ = server_.bind("127.0.0.1", 0);
    thread_ = std::thread([this] { server_.listen(); });
  }
  ~RunningServer() {
    server_.stop();
    thread_.join();
  }

  httplib::Client client() const {
    httplib::Client c("127.0.0.1", port_);
    c.set_connection_timeout(5);
    return c;
  }

 private:
  LexiconService service_;
  HttpServer server_;
  int port_ = 0;
  std::thread thread_;
};

}  // namespace

TEST_CASE("reads over HTTP") {
  RunningServer server(fixtures::rice());
  auto c = server.client();

  auto r = c.Get("/search?lemma=riz&language=fr");
  REQUIRE(r);
  CHECK(r->status == 200);
  CHECK(r->get_header_value("Content-Type").starts_with("application/json"));
  json body = json::parse(r->body);
  CHECK(body["items"][0]["interlingual"] == "ukc:C1");

  r = c.Get("/search?lemma=%E7%8E%84%E7%B1%B3");  // 玄米
  REQUIRE(r);
  CHECK(json::parse(r->body)["items"][0]["local"] == true);

  r = c.Get("/concepts/ukc:C1?languages=sw,fr");
  REQUIRE(r);
  body = json::parse(r->body);
  CHECK(body["lexicalizations"][0]["status"] == "gap");
  CHECK(body["lexicalizations"][1]["senses"][0]["lemma"] == "riz");

  r = c.Get("/concepts/ukc:C42");
  REQUIRE(r);
  CHECK(r->status == 404);
  CHECK(json::parse(r->body)["code"] == "UNKNOWN_REF");
}

TEST_CASE("edits over HTTP") {
  RunningServer server(fixtures::rice());
  auto c = server.client();

  json edit{{"contributor", "anna"},
            {"action", "lexicalize"},
            {"args", {{"concept", "ukc:C3"}, {"language", "fr"}, {"lemma", "riz cru"}}}};
  auto r = c.Post("/edits", edit.dump(), "application/json");
  REQUIRE(r);
  CHECK(r->status == 200);
  CHECK(json::parse(r->body)["seq"] == 1);

  r = c.Get("/search?lemma=riz%20cru&language=fr");
  REQUIRE(r);
  CHECK(json::parse(r->body)["total"] == 1);

  r = c.Post("/edits", "{not json", "application/json");
  REQUIRE(r);
  CHECK(r->status == 400);
  CHECK(json::parse(r->body)["code"] == "PARSE_ERROR");

  r = c.Get("/changelog?since=0");
  REQUIRE(r);
  CHECK(json::parse(r->body)["last_seq"] == 1);
}

TEST_CASE("concurrent clients") {
  RunningServer server(fixtures::alpine());
  std::vector<std::thread> clients;
  std::atomic<int> ok{0};
  for (int t = 0; t < 4; ++t) {
    clients.emplace_back([&, t] {
      auto c = server.client();
      for (int i = 0; i < 10; ++i) {
        json edit{{"contributor", "c" + std::to_string(t)},
                  {"action", "add_interlingual_concept"},
                  {"args", {{"label", "x" + std::to_string(t) + "_" + std::to_string(i)}}}};
        auto r = c.Post("/edits", edit.dump(), "application/json");
        if (r && r->status == 200) ++ok;
        c.Get("/concepts?page_size=1000");
      }
    });
  }
  for (auto& t : clients) t.join();
  CHECK(ok == 40);
  auto r = server.client().Get("/concepts?roots=true&page_size=1000");
  REQUIRE(r);
  CHECK(json::parse(r->body)["total"] == 2 + 40);
}
