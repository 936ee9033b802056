#pragma once

#include <memory>
#include <string>

#include "chocbar/service.hpp"

namespace httplib {
class Server;
}

namespace chocbar {

struct HttpOptions {
  std::string static_dir;  // served under / when non-empty
};

// JSON API over a GameService:
//   POST /api/games                  {k,x,y,z,human_first?,hints?,engine_reply?}
//   GET  /api/games/{id}
//   POST /api/games/{id}/moves       {axis:"x"|"y"|"z", target}
//   POST /api/games/{id}/engine-move
//   GET  /api/games/{id}/legal-moves
//   GET  /api/analyze?k=&x=&y=&z=&grundy=
//   GET  /api/health
// Errors are {"error": code, "message": text, "details"?: {...}}.
class HttpServer {
 public:
  HttpServer(GameService& service, HttpOptions options = {});
  ~HttpServer();

  // Blocks until stop().
  bool listen(const std::string& host, int port);
  // Returns the bound port, or -1.
  int bind_to_any_port(const std::string& host);
  bool listen_after_bind();
  void stop();
  void wait_until_ready() const;

 private:
  void install_routes();

  GameService& service_;
  HttpOptions options_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace chocbar
