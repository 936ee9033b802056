#pragma once

// Game sessions against the engine, independent of the HTTP transport.

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "chocbar/core.hpp"
#include "chocbar/solver.hpp"

namespace chocbar {

using Clock = std::chrono::steady_clock;

enum class Mover { kHuman, kEngine };
enum class GameStatus { kInProgress, kHumanWon, kEngineWon };

std::string_view to_string(Mover m);       // "human" / "engine"
std::string_view to_string(GameStatus s);  // "in-progress" / "human-won" / "engine-won"

struct HistoryEntry {
  Mover mover = Mover::kHuman;
  Move move;
};

struct GameSession {
  std::string id;
  SlopeParams params = SlopeParams::plain(1);
  Position start;
  Position current;
  std::vector<HistoryEntry> history;
  GameStatus status = GameStatus::kInProgress;
  Mover to_move = Mover::kHuman;
  bool hints = false;
  // When false the engine waits for an explicit engine-move call after each
  // human cut.
  bool engine_reply = true;
  Clock::time_point last_active{};
};

// Narrow persistence seam keyed by session id.
class SessionStore {
 public:
  virtual ~SessionStore() = default;
  virtual void save(const GameSession& session) = 0;
  virtual std::optional<GameSession> load(const std::string& id) = 0;
  // Drops sessions idle since before `cutoff`; returns how many.
  virtual std::size_t expire(Clock::time_point cutoff) = 0;
};

class InMemorySessionStore final : public SessionStore {
 public:
  void save(const GameSession& session) override;
  std::optional<GameSession> load(const std::string& id) override;
  std::size_t expire(Clock::time_point cutoff) override;
  std::size_t size() const;

 private:
  mutable std::mutex mu_;
  std::unordered_map<std::string, GameSession> sessions_;
};

struct ServiceOptions {
  std::uint64_t budget = kDefaultBudget;
  std::chrono::seconds idle_ttl{3600};
};

struct CreateGameRequest {
  Coord k = 0;
  Position start;
  bool human_first = true;
  bool hints = false;
  bool engine_reply = true;
};

struct TurnResult {
  GameSession session;
  std::vector<HistoryEntry> applied;  // moves made by this call, in order
};

struct Analysis {
  Outcome outcome = Outcome::kP;
  bool in_valid_region = true;
  std::size_t winning_move_count = 0;
  std::optional<std::uint32_t> grundy;
  std::optional<Move> first_winning_move;
};

class GameService {
 public:
  explicit GameService(ServiceOptions options = {},
                       std::unique_ptr<SessionStore> store = nullptr);

  GameSession create_game(const CreateGameRequest& request);
  GameSession get_game(const std::string& id);
  TurnResult post_move(const std::string& id, Axis axis, Coord target);
  TurnResult engine_move(const std::string& id);
  std::vector<Move> legal_moves(const std::string& id);
  Analysis analyze(Coord k, const Position& pos, bool include_grundy);

  nlohmann::ordered_json to_json(const GameSession& session);
  static nlohmann::ordered_json to_json(const Analysis& analysis);
  static nlohmann::ordered_json to_json(const Move& move);
  static nlohmann::ordered_json to_json(const Position& pos);

  std::shared_ptr<Solver> solver_for(Coord k);

 private:
  std::shared_ptr<std::mutex> session_lock(const std::string& id);
  GameSession load_or_throw(const std::string& id);
  void apply(GameSession& session, Mover mover, const Move& move);
  HistoryEntry play_engine(GameSession& session);
  nlohmann::ordered_json hint_for(const GameSession& session);
  std::string new_id();

  ServiceOptions options_;
  std::unique_ptr<SessionStore> store_;
  std::mutex mu_;
  std::map<Coord, std::shared_ptr<Solver>> solvers_;
  std::unordered_map<std::string, std::shared_ptr<std::mutex>> session_locks_;
  std::uint64_t id_state_;
};

}  // namespace chocbar
