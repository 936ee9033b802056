#include "chocbar/service.hpp"

#include <cstdio>
#include <random>

#include "chocbar/theory.hpp"

namespace chocbar {

using nlohmann::ordered_json;

std::string_view to_string(Mover m) { return m == Mover::kHuman ? "human" : "engine"; }

std::string_view to_string(GameStatus s) {
  switch (s) {
    case GameStatus::kInProgress: return "in-progress";
    case GameStatus::kHumanWon: return "human-won";
    case GameStatus::kEngineWon: return "engine-won";
  }
  return "?";
}

void InMemorySessionStore::save(const GameSession& session) {
  std::lock_guard lock(mu_);
  sessions_.insert_or_assign(session.id, session);
}

std::optional<GameSession> InMemorySessionStore::load(const std::string& id) {
  std::lock_guard lock(mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) return std::nullopt;
  return it->second;
}

std::size_t InMemorySessionStore::expire(Clock::time_point cutoff) {
  std::lock_guard lock(mu_);
  return std::erase_if(sessions_,
                       [&](const auto& kv) { return kv.second.last_active < cutoff; });
}

std::size_t InMemorySessionStore::size() const {
  std::lock_guard lock(mu_);
  return sessions_.size();
}

GameService::GameService(ServiceOptions options, std::unique_ptr<SessionStore> store)
    : options_(options),
      store_(store ? std::move(store) : std::make_unique<InMemorySessionStore>()),
      id_state_(std::random_device{}() ^ (std::uint64_t{std::random_device{}()} << 32)) {}

std::shared_ptr<Solver> GameService::solver_for(Coord k) {
  const SlopeParams params = SlopeParams::plain(k);
  std::lock_guard lock(mu_);
  auto& slot = solvers_[params.k()];
  if (!slot) {
    slot = std::make_shared<Solver>(std::make_shared<FloorSlope>(params),
                                    SolverOptions{options_.budget});
  }
  return slot;
}

std::shared_ptr<std::mutex> GameService::session_lock(const std::string& id) {
  std::lock_guard lock(mu_);
  auto& slot = session_locks_[id];
  if (!slot) slot = std::make_shared<std::mutex>();
  return slot;
}

std::string GameService::new_id() {
  std::lock_guard lock(mu_);
  std::mt19937_64 gen(id_state_);
  id_state_ = gen();
  char buf[33];
  std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(gen()),
                static_cast<unsigned long long>(gen()));
  return buf;
}

GameSession GameService::load_or_throw(const std::string& id) {
  store_->expire(Clock::now() - options_.idle_ttl);
  auto session = store_->load(id);
  if (!session) throw NotFound("no game with id '" + id + "'");
  return *session;
}

void GameService::apply(GameSession& session, Mover mover, const Move& move) {
  session.current = move.result;
  session.history.push_back({mover, move});
  if (session.current.terminal()) {
    // Whoever leaves the lone bitter box wins.
    session.status = mover == Mover::kHuman ? GameStatus::kHumanWon : GameStatus::kEngineWon;
  } else {
    session.to_move = mover == Mover::kHuman ? Mover::kEngine : Mover::kHuman;
  }
}

HistoryEntry GameService::play_engine(GameSession& session) {
  const Move move = solver_for(session.params.k())->engine_move(session.current);
  apply(session, Mover::kEngine, move);
  return session.history.back();
}

GameSession GameService::create_game(const CreateGameRequest& request) {
  const SlopeParams params = SlopeParams::plain(request.k);
  check_position(request.start);
  if (request.start.terminal()) {
    throw InvalidArgument("game already terminal: 0,0,0 is the lone bitter box");
  }
  auto solver = solver_for(params.k());
  solver->check_budget(request.start);

  GameSession session;
  session.id = new_id();
  session.params = params;
  session.start = request.start;
  session.current = request.start;
  session.hints = request.hints;
  session.engine_reply = request.engine_reply;
  session.to_move = request.human_first ? Mover::kHuman : Mover::kEngine;
  if (!request.human_first) play_engine(session);
  session.last_active = Clock::now();
  store_->expire(Clock::now() - options_.idle_ttl);
  store_->save(session);
  return session;
}

GameSession GameService::get_game(const std::string& id) { return load_or_throw(id); }

TurnResult GameService::post_move(const std::string& id, Axis axis, Coord target) {
  auto lock_handle = session_lock(id);
  std::lock_guard lock(*lock_handle);
  GameSession session = load_or_throw(id);
  if (session.status != GameStatus::kInProgress) {
    throw Conflict("game_over", "game " + id + " is over (" +
                                    std::string(to_string(session.status)) + ")");
  }
  if (session.to_move != Mover::kHuman) {
    throw Conflict("not_your_turn", "the engine is to move in game " + id);
  }
  const FloorSlope f(session.params);
  const Position result = apply_move(f, session.current, axis, target);

  TurnResult out;
  apply(session, Mover::kHuman, {axis, target, result});
  out.applied.push_back(session.history.back());
  if (session.status == GameStatus::kInProgress && session.engine_reply) {
    out.applied.push_back(play_engine(session));
  }
  session.last_active = Clock::now();
  store_->save(session);
  out.session = std::move(session);
  return out;
}

TurnResult GameService::engine_move(const std::string& id) {
  auto lock_handle = session_lock(id);
  std::lock_guard lock(*lock_handle);
  GameSession session = load_or_throw(id);
  if (session.status != GameStatus::kInProgress) {
    throw Conflict("game_over", "game " + id + " is over (" +
                                    std::string(to_string(session.status)) + ")");
  }
  if (session.to_move != Mover::kEngine) {
    throw Conflict("not_your_turn", "the human is to move in game " + id);
  }
  TurnResult out;
  out.applied.push_back(play_engine(session));
  session.last_active = Clock::now();
  store_->save(session);
  out.session = std::move(session);
  return out;
}

std::vector<Move> GameService::legal_moves(const std::string& id) {
  const GameSession session = load_or_throw(id);
  if (session.status != GameStatus::kInProgress) return {};
  return moves(FloorSlope(session.params), session.current);
}

Analysis GameService::analyze(Coord k, const Position& pos, bool include_grundy) {
  check_position(pos);
  auto solver = solver_for(k);
  solver->check_budget(pos);
  Analysis a;
  a.outcome = solver->classify(pos);
  a.in_valid_region = in_valid_region(solver->height(), pos);
  const std::vector<Move> winners = solver->winning_moves(pos);
  a.winning_move_count = winners.size();
  if (!winners.empty()) a.first_winning_move = winners.front();
  if (include_grundy) a.grundy = solver->grundy(pos);
  return a;
}

ordered_json GameService::to_json(const Position& pos) {
  ordered_json j;
  j["x"] = pos.x;
  j["y"] = pos.y;
  j["z"] = pos.z;
  return j;
}

ordered_json GameService::to_json(const Move& move) {
  ordered_json j;
  j["axis"] = std::string(axis_name(move.axis));
  j["target"] = move.target;
  j["result"] = to_json(move.result);
  return j;
}

ordered_json GameService::to_json(const Analysis& a) {
  ordered_json j;
  j["class"] = std::string(to_string(a.outcome));
  j["in_valid_region"] = a.in_valid_region;
  j["winning_move_count"] = a.winning_move_count;
  if (a.grundy) j["grundy"] = *a.grundy;
  if (a.first_winning_move) j["first_winning_move"] = to_json(*a.first_winning_move);
  return j;
}

ordered_json GameService::hint_for(const GameSession& session) {
  ordered_json hint;
  const Coord k = session.params.k();
  hint["class"] = std::string(to_string(solver_for(k)->classify(session.current)));
  hint["source"] = "oracle";

  std::optional<ConjectureFamily> family;
  if (k % 4 == 3) {
    family = ConjectureFamily::for_statement(Statement::kTheorem4m3, k);
  } else if (k % 4 == 1) {
    family = ConjectureFamily::for_statement(Statement::kConjecture4m1, k);
  } else {
    auto even = ConjectureFamily::for_statement(Statement::kConjectureEven, k);
    if (session.current.x <= even.bound() && session.current.z <= even.bound()) family = even;
  }
  if (family) {
    const Prediction p = predict(*family, session.current);
    ordered_json cf;
    cf["statement"] = std::string(to_string(family->statement()));
    cf["class"] = p.is_p ? "P" : "N";
    cf["in_scope"] = p.in_scope;
    cf["conjectural"] = p.conjectural;
    hint["closed_form"] = std::move(cf);
  } else {
    hint["closed_form"] = nullptr;
  }
  return hint;
}

ordered_json GameService::to_json(const GameSession& session) {
  ordered_json j;
  j["id"] = session.id;
  j["k"] = session.params.k();
  j["start"] = to_json(session.start);
  j["position"] = to_json(session.current);
  j["status"] = std::string(to_string(session.status));
  if (session.status == GameStatus::kInProgress) {
    j["turn"] = std::string(to_string(session.to_move));
  } else {
    j["turn"] = nullptr;
  }
  j["hints"] = session.hints;
  j["engine_reply"] = session.engine_reply;
  j["history"] = ordered_json::array();
  for (const HistoryEntry& h : session.history) {
    ordered_json row = to_json(h.move);
    row["mover"] = std::string(to_string(h.mover));
    j["history"].push_back(std::move(row));
  }
  if (session.hints && session.status == GameStatus::kInProgress) {
    j["hint"] = hint_for(session);
  }
  return j;
}

}  // namespace chocbar
