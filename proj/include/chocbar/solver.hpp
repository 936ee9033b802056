#pragma once

// Ground-truth engine: Grundy numbers by memoized recursion, P/N labels by a
// Boolean retrograde sweep, and winning-move search over every successor.

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "chocbar/core.hpp"
#include "chocbar/kernels.hpp"

namespace chocbar {

inline constexpr std::uint64_t kDefaultBudget = 50'000'000;

enum class Outcome { kP, kN };

std::string_view to_string(Outcome o);  // "P" / "N"
Outcome parse_outcome(std::string_view text);

std::uint32_t mex(std::span<const std::uint32_t> values);

// Grundy numbers keyed by (height-function id, position). Entries are written
// once; a second write of the same key is ignored. Safe for concurrent use.
class SolveCache {
 public:
  std::optional<std::uint32_t> find(const std::string& fn_id, const Position& p) const;
  void insert(const std::string& fn_id, const Position& p, std::uint32_t g);
  std::size_t size() const;

 private:
  using Table = std::unordered_map<Position, std::uint32_t, PositionHash>;
  mutable std::shared_mutex mu_;
  std::unordered_map<std::string, Table> tables_;
};

struct SolverOptions {
  // Largest state box (x+1)(y+1)(z+1) a single query may touch.
  std::uint64_t budget = kDefaultBudget;
};

// Reads CHOCBAR_BUDGET when set, else kDefaultBudget.
std::uint64_t budget_from_env();

// All public methods are safe to call concurrently; they serialize on an
// internal lock.
class Solver {
 public:
  explicit Solver(std::shared_ptr<const HeightFunction> f, SolverOptions options = {},
                  std::shared_ptr<SolveCache> cache = nullptr);

  const HeightFunction& height() const { return *f_; }
  std::uint64_t budget() const { return options_.budget; }

  std::uint32_t grundy(const Position& pos);
  Outcome classify(const Position& pos);
  // Cuts whose result is a P-position; X, then Y, then Z, ascending target.
  std::vector<Move> winning_moves(const Position& pos);
  // First winning move, else the legal cut with the smallest result position.
  Move engine_move(const Position& pos);

  // Throws ResourceLimit when the state box of `pos` exceeds the budget.
  void check_budget(const Position& pos) const;

 private:
  const OutcomeTable& outcomes_for(const Position& pos);
  std::uint32_t grundy_locked(const Position& pos);
  bool is_p_locked(const Position& pos) { return outcomes_for(pos).is_p(pos); }

  std::shared_ptr<const HeightFunction> f_;
  std::string fn_id_;
  SolverOptions options_;
  std::shared_ptr<SolveCache> cache_;
  std::unique_ptr<OutcomeTable> outcomes_;
  std::mutex mu_;
};

}  // namespace chocbar
