#include "chocbar/http_server.hpp"

#include <charconv>

#include <httplib.h>

namespace chocbar {

namespace {

using nlohmann::ordered_json;

int status_for(const std::string& code) {
  if (code == "not_found") return 404;
  if (code == "illegal_move" || code == "game_over" || code == "not_your_turn") return 409;
  if (code == "resource_limit") return 503;
  if (code == "invalid_argument" || code == "family_mismatch" || code == "out_of_domain" ||
      code == "bad_request") {
    return 400;
  }
  return 500;
}

void send_json(httplib::Response& res, int status, const ordered_json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, const std::string& code, const std::string& message,
                const ordered_json& details = nullptr) {
  ordered_json body;
  body["error"] = code;
  body["message"] = message;
  if (!details.is_null()) body["details"] = details;
  send_json(res, status_for(code), body);
}

Coord coord_param(const httplib::Request& req, const std::string& name) {
  if (!req.has_param(name)) throw InvalidArgument("missing query parameter '" + name + "'");
  const std::string text = req.get_param_value(name);
  Coord v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw InvalidArgument("query parameter '" + name + "' must be a non-negative integer");
  }
  return v;
}

Coord coord_field(const ordered_json& body, const char* name) {
  if (!body.contains(name)) throw InvalidArgument(std::string("missing field '") + name + "'");
  const auto& v = body.at(name);
  if (!v.is_number_integer() || (v.is_number_integer() && v.get<std::int64_t>() < 0)) {
    throw InvalidArgument(std::string("field '") + name + "' must be a non-negative integer");
  }
  return v.get<Coord>();
}

bool flag_field(const ordered_json& body, const char* name, bool fallback) {
  if (!body.contains(name)) return fallback;
  if (!body.at(name).is_boolean()) {
    throw InvalidArgument(std::string("field '") + name + "' must be a boolean");
  }
  return body.at(name).get<bool>();
}

ordered_json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return ordered_json::object();
  auto body = ordered_json::parse(req.body, nullptr, false);
  if (body.is_discarded() || !body.is_object()) {
    throw InvalidArgument("request body must be a JSON object");
  }
  return body;
}

ordered_json legal_ranges(const Position& p) {
  ordered_json j;
  for (auto [name, value] : {std::pair{"x", p.x}, std::pair{"y", p.y}, std::pair{"z", p.z}}) {
    if (value == 0) {
      j[name] = nullptr;
    } else {
      j[name] = {{"min_target", 0}, {"max_target", value - 1}};
    }
  }
  return j;
}

template <typename Handler>
httplib::Server::Handler guarded(Handler handler) {
  return [handler](const httplib::Request& req, httplib::Response& res) {
    try {
      handler(req, res);
    } catch (const Error& e) {
      send_error(res, e.code(), e.what());
    } catch (const std::exception& e) {
      send_error(res, "internal", e.what());
    }
  };
}

}  // namespace

HttpServer::HttpServer(GameService& service, HttpOptions options)
    : service_(service), options_(std::move(options)), server_(std::make_unique<httplib::Server>()) {
  install_routes();
}

HttpServer::~HttpServer() = default;

void HttpServer::install_routes() {
  auto& s = *server_;
  GameService& svc = service_;

  s.Get("/api/health", guarded([](const httplib::Request&, httplib::Response& res) {
          send_json(res, 200, {{"status", "ok"}});
        }));

  s.Post("/api/games", guarded([&svc](const httplib::Request& req, httplib::Response& res) {
           const ordered_json body = parse_body(req);
           CreateGameRequest create;
           create.k = coord_field(body, "k");
           create.start = {coord_field(body, "x"), coord_field(body, "y"), coord_field(body, "z")};
           create.human_first = flag_field(body, "human_first", true);
           create.hints = flag_field(body, "hints", false);
           create.engine_reply = flag_field(body, "engine_reply", true);
           send_json(res, 201, svc.to_json(svc.create_game(create)));
         }));

  s.Get(R"(/api/games/([0-9a-f]+))",
        guarded([&svc](const httplib::Request& req, httplib::Response& res) {
          send_json(res, 200, svc.to_json(svc.get_game(req.matches[1])));
        }));

  s.Post(R"(/api/games/([0-9a-f]+)/moves)",
         guarded([&svc](const httplib::Request& req, httplib::Response& res) {
           const std::string id = req.matches[1];
           const ordered_json body = parse_body(req);
           if (!body.contains("axis") || !body.at("axis").is_string()) {
             throw InvalidArgument("field 'axis' must be \"x\", \"y\" or \"z\"");
           }
           const Axis axis = parse_axis(body.at("axis").get<std::string>());
           const Coord target = coord_field(body, "target");
           try {
             TurnResult turn = svc.post_move(id, axis, target);
             ordered_json out = svc.to_json(turn.session);
             out["applied"] = ordered_json::array();
             for (const HistoryEntry& h : turn.applied) {
               ordered_json row = GameService::to_json(h.move);
               row["mover"] = std::string(to_string(h.mover));
               out["applied"].push_back(std::move(row));
             }
             send_json(res, 200, out);
           } catch (const IllegalMove& e) {
             const GameSession session = svc.get_game(id);
             ordered_json details;
             details["position"] = GameService::to_json(session.current);
             details["legal"] = legal_ranges(session.current);
             send_error(res, e.code(), e.what(), details);
           }
         }));

  s.Post(R"(/api/games/([0-9a-f]+)/engine-move)",
         guarded([&svc](const httplib::Request& req, httplib::Response& res) {
           TurnResult turn = svc.engine_move(req.matches[1]);
           ordered_json out = svc.to_json(turn.session);
           out["applied"] = ordered_json::array();
           for (const HistoryEntry& h : turn.applied) {
             ordered_json row = GameService::to_json(h.move);
             row["mover"] = std::string(to_string(h.mover));
             out["applied"].push_back(std::move(row));
           }
           send_json(res, 200, out);
         }));

  s.Get(R"(/api/games/([0-9a-f]+)/legal-moves)",
        guarded([&svc](const httplib::Request& req, httplib::Response& res) {
          const std::string id = req.matches[1];
          const GameSession session = svc.get_game(id);
          ordered_json out;
          out["position"] = GameService::to_json(session.current);
          out["moves"] = ordered_json::array();
          for (const Move& m : svc.legal_moves(id)) out["moves"].push_back(GameService::to_json(m));
          send_json(res, 200, out);
        }));

  s.Get("/api/analyze", guarded([&svc](const httplib::Request& req, httplib::Response& res) {
          const Coord k = coord_param(req, "k");
          const Position pos{coord_param(req, "x"), coord_param(req, "y"), coord_param(req, "z")};
          bool grundy = false;
          if (req.has_param("grundy")) {
            const std::string g = req.get_param_value("grundy");
            grundy = g == "1" || g == "true";
          }
          try {
            send_json(res, 200, GameService::to_json(svc.analyze(k, pos, grundy)));
          } catch (const ResourceLimit& e) {
            send_error(res, e.code(), e.what(),
                       {{"budget", e.budget()}, {"requested", e.requested()}});
          }
        }));

  if (!options_.static_dir.empty()) {
    if (!s.set_mount_point("/", options_.static_dir)) {
      throw InvalidArgument("static directory '" + options_.static_dir + "' does not exist");
    }
  }
}

bool HttpServer::listen(const std::string& host, int port) { return server_->listen(host, port); }

int HttpServer::bind_to_any_port(const std::string& host) {
  return server_->bind_to_any_port(host);
}

bool HttpServer::listen_after_bind() { return server_->listen_after_bind(); }

void HttpServer::stop() { server_->stop(); }

void HttpServer::wait_until_ready() const { server_->wait_until_ready(); }

}  // namespace chocbar
