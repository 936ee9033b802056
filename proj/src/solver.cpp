#include "chocbar/solver.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <string>

namespace chocbar {

std::string_view to_string(Outcome o) { return o == Outcome::kP ? "P" : "N"; }

Outcome parse_outcome(std::string_view text) {
  if (text == "P") return Outcome::kP;
  if (text == "N") return Outcome::kN;
  throw InvalidArgument("unknown outcome '" + std::string(text) + "'");
}

std::uint32_t mex(std::span<const std::uint32_t> values) {
  std::vector<std::uint8_t> seen(values.size() + 1, 0);
  for (std::uint32_t v : values) {
    if (v < seen.size()) seen[v] = 1;
  }
  std::uint32_t g = 0;
  while (seen[g] != 0) ++g;
  return g;
}

std::optional<std::uint32_t> SolveCache::find(const std::string& fn_id,
                                              const Position& p) const {
  std::shared_lock lock(mu_);
  auto t = tables_.find(fn_id);
  if (t == tables_.end()) return std::nullopt;
  auto it = t->second.find(p);
  if (it == t->second.end()) return std::nullopt;
  return it->second;
}

void SolveCache::insert(const std::string& fn_id, const Position& p, std::uint32_t g) {
  std::unique_lock lock(mu_);
  tables_[fn_id].try_emplace(p, g);
}

std::size_t SolveCache::size() const {
  std::shared_lock lock(mu_);
  std::size_t n = 0;
  for (const auto& [id, table] : tables_) n += table.size();
  return n;
}

std::uint64_t budget_from_env() {
  const char* raw = std::getenv("CHOCBAR_BUDGET");
  if (raw == nullptr || *raw == '\0') return kDefaultBudget;
  std::uint64_t value = 0;
  const std::string_view text(raw);
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value == 0) {
    throw InvalidArgument("CHOCBAR_BUDGET must be a positive integer, got '" +
                          std::string(text) + "'");
  }
  return value;
}

Solver::Solver(std::shared_ptr<const HeightFunction> f, SolverOptions options,
               std::shared_ptr<SolveCache> cache)
    : f_(std::move(f)),
      fn_id_(f_->id()),
      options_(options),
      cache_(cache ? std::move(cache) : std::make_shared<SolveCache>()) {}

void Solver::check_budget(const Position& pos) const {
  check_position(pos);
  const std::uint64_t states = Box::around(pos).volume();
  if (states > options_.budget) throw ResourceLimit(options_.budget, states);
}

const OutcomeTable& Solver::outcomes_for(const Position& pos) {
  if (outcomes_ && outcomes_->box().contains(pos)) return *outcomes_;
  check_budget(pos);
  Box box = Box::around(pos);
  if (outcomes_) {
    const Box grown = hull(outcomes_->box(), box);
    if (grown.volume() <= options_.budget) box = grown;
  }
  outcomes_ = std::make_unique<OutcomeTable>(outcome_table(*f_, box));
  return *outcomes_;
}

std::uint32_t Solver::grundy_locked(const Position& root) {
  if (auto hit = cache_->find(fn_id_, root)) return *hit;
  check_budget(root);

  std::vector<Position> stack{root};
  std::vector<std::uint32_t> child_values;
  while (!stack.empty()) {
    const Position p = stack.back();
    if (cache_->find(fn_id_, p)) {
      stack.pop_back();
      continue;
    }
    child_values.clear();
    bool ready = true;
    for (const Move& m : moves(*f_, p)) {
      if (auto g = cache_->find(fn_id_, m.result)) {
        child_values.push_back(*g);
      } else {
        ready = false;
        stack.push_back(m.result);
      }
    }
    if (ready) {
      cache_->insert(fn_id_, p, mex(child_values));
      stack.pop_back();
    }
  }
  return *cache_->find(fn_id_, root);
}

std::uint32_t Solver::grundy(const Position& pos) {
  std::lock_guard lock(mu_);
  return grundy_locked(pos);
}

Outcome Solver::classify(const Position& pos) {
  std::lock_guard lock(mu_);
  return is_p_locked(pos) ? Outcome::kP : Outcome::kN;
}

std::vector<Move> Solver::winning_moves(const Position& pos) {
  std::lock_guard lock(mu_);
  const OutcomeTable& table = outcomes_for(pos);
  std::vector<Move> out;
  for (const Move& m : moves(*f_, pos)) {
    if (table.is_p(m.result)) out.push_back(m);
  }
  return out;
}

Move Solver::engine_move(const Position& pos) {
  if (pos.terminal()) throw NoMove("no legal cut from the terminal position 0,0,0");
  std::vector<Move> winners = winning_moves(pos);
  if (!winners.empty()) return winners.front();
  std::vector<Move> all = moves(*f_, pos);
  return *std::min_element(all.begin(), all.end(), [](const Move& a, const Move& b) {
    return a.result < b.result;
  });
}

}  // namespace chocbar
