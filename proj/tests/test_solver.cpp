#include <doctest.h>

#include <cstdlib>
#include <thread>

#include "brute_force.hpp"
#include "chocbar/solver.hpp"

using namespace chocbar;

namespace {

Solver solver_k(Coord k, std::uint64_t budget = kDefaultBudget) {
  return Solver(std::make_shared<FloorSlope>(k), SolverOptions{budget});
}

}  // namespace

TEST_CASE("mex") {
  CHECK(mex(std::vector<std::uint32_t>{}) == 0);
  CHECK(mex(std::vector<std::uint32_t>{0, 1, 2}) == 3);
  CHECK(mex(std::vector<std::uint32_t>{1, 3}) == 0);
  CHECK(mex(std::vector<std::uint32_t>{2, 0, 0, 5, 1}) == 3);
}

TEST_CASE("grundy") {
  Solver s = solver_k(3);
  CHECK(s.grundy({0, 0, 0}) == 0);
  CHECK(s.grundy({1, 0, 0}) == 1);
  CHECK(s.grundy({9, 3, 10}) == 0);
  CHECK(s.grundy({14, 3, 10}) == 5);
  CHECK(s.grundy({13, 6, 7}) == 3);
  CHECK(s.grundy({1, 1, 0}) == 2);
}

TEST_CASE("grundy memo recursion matches brute force") {
  for (Coord k : {1, 3, 4}) {
    Solver s = solver_k(k);
    brute::Grundy oracle(k);
    for (Coord x = 0; x <= 6; ++x)
      for (Coord y = 0; y <= 5; ++y)
        for (Coord z = 0; z <= 6; ++z) CHECK(s.grundy({x, y, z}) == oracle({x, y, z}));
  }
}

TEST_CASE("classify") {
  Solver s = solver_k(3);
  CHECK(s.classify({9, 3, 10}) == Outcome::kP);
  CHECK(s.classify({14, 3, 10}) == Outcome::kN);
  CHECK(s.classify({0, 0, 0}) == Outcome::kP);
  CHECK(s.classify({1, 1, 0}) == Outcome::kN);
  CHECK(solver_k(7).classify({0, 0, 0}) == Outcome::kP);
}

TEST_CASE("winning moves") {
  Solver s = solver_k(3);
  const auto wins = s.winning_moves({14, 3, 10});
  REQUIRE(wins.size() == 1);
  CHECK(wins[0] == Move{Axis::kX, 9, {9, 3, 10}});
  CHECK(s.winning_moves({9, 3, 10}).empty());
  CHECK(solver_k(5).winning_moves({1, 0, 0}) == std::vector<Move>{{Axis::kX, 0, {0, 0, 0}}});
  CHECK(s.winning_moves({0, 0, 0}).empty());

  // Ordering: X, then Y, then Z, ascending target.
  Solver s7 = solver_k(7);
  for (Coord x = 0; x <= 12; ++x) {
    for (Coord z = 0; z <= 12; ++z) {
      const auto w = s7.winning_moves({x, 2, z});
      for (std::size_t i = 1; i < w.size(); ++i) {
        const bool ordered = w[i - 1].axis < w[i].axis ||
                             (w[i - 1].axis == w[i].axis && w[i - 1].target < w[i].target);
        CHECK(ordered);
      }
    }
  }
}

TEST_CASE("engine_move") {
  Solver s = solver_k(3);
  CHECK(s.engine_move({14, 3, 10}) == Move{Axis::kX, 9, {9, 3, 10}});
  CHECK(s.engine_move({1, 0, 0}) == Move{Axis::kX, 0, {0, 0, 0}});
  CHECK_THROWS_AS(s.engine_move({0, 0, 0}), NoMove);
  // No winning cut from a P-position: smallest result, first in cut order.
  CHECK(s.engine_move({9, 3, 10}) == Move{Axis::kX, 0, {0, 3, 10}});
  CHECK(s.engine_move({0, 1, 1}).result == Position{0, 0, 0});
}

TEST_CASE("oracle soundness: P iff every successor is N") {
  for (Coord k : {3, 7}) {
    Solver s = solver_k(k);
    const FloorSlope f(k);
    for (Coord x = 0; x <= 25; ++x) {
      for (Coord z = 0; z <= 25; ++z) {
        for (Coord y = 0; y <= f(x, z) + 2; ++y) {
          const Position p{x, y, z};
          bool some_p = false;
          for (const Move& m : moves(f, p)) some_p = some_p || s.classify(m.result) == Outcome::kP;
          CHECK((s.classify(p) == Outcome::kP) == !some_p);
        }
      }
    }
  }
}

TEST_CASE("grundy zero iff P") {
  for (Coord k : {3, 5, 6}) {
    Solver s = solver_k(k);
    for (Coord x = 0; x <= 12; ++x)
      for (Coord y = 0; y <= 6; ++y)
        for (Coord z = 0; z <= 12; ++z)
          CHECK((s.grundy({x, y, z}) == 0) == (s.classify({x, y, z}) == Outcome::kP));
  }
}

TEST_CASE("budget guard") {
  Solver s = solver_k(3, 1000);
  CHECK(s.classify({9, 3, 10}) == Outcome::kP);  // 10*4*11 = 440 states
  CHECK_THROWS_AS(s.classify({30, 3, 30}), ResourceLimit);
  CHECK_THROWS_AS(s.grundy({30, 3, 30}), ResourceLimit);
  try {
    s.winning_moves({100, 0, 100});
    FAIL("expected ResourceLimit");
  } catch (const ResourceLimit& e) {
    CHECK(e.budget() == 1000);
    CHECK(std::string(e.what()).find("budget=1000") != std::string::npos);
  }
}

TEST_CASE("budget from environment") {
  ::unsetenv("CHOCBAR_BUDGET");
  CHECK(budget_from_env() == kDefaultBudget);
  ::setenv("CHOCBAR_BUDGET", "1234", 1);
  CHECK(budget_from_env() == 1234);
  ::setenv("CHOCBAR_BUDGET", "abc", 1);
  CHECK_THROWS_AS(budget_from_env(), InvalidArgument);
  ::unsetenv("CHOCBAR_BUDGET");
}

TEST_CASE("cache transparency and determinism") {
  auto shared = std::make_shared<SolveCache>();
  Solver warm(std::make_shared<FloorSlope>(7), {}, shared);
  for (Coord x = 0; x <= 20; ++x) warm.grundy({x, 2, 20 - x});
  CHECK(shared->size() > 0);

  Solver also_warm(std::make_shared<FloorSlope>(7), {}, shared);
  Solver cold = solver_k(7);
  Solver other_k(std::make_shared<FloorSlope>(3), {}, shared);
  for (Coord x = 0; x <= 20; x += 3) {
    for (Coord z = 0; z <= 20; z += 4) {
      const Position p{x, 3, z};
      CHECK(also_warm.grundy(p) == cold.grundy(p));
      CHECK(also_warm.classify(p) == cold.classify(p));
      CHECK(also_warm.winning_moves(p) == cold.winning_moves(p));
      CHECK(other_k.grundy(p) == solver_k(3).grundy(p));
    }
  }

  // Growing the outcome table out of order gives the same answers.
  Solver grown = solver_k(7);
  CHECK(grown.classify({3, 1, 3}) == cold.classify({3, 1, 3}));
  CHECK(grown.classify({19, 4, 2}) == cold.classify({19, 4, 2}));
  CHECK(grown.classify({2, 5, 19}) == cold.classify({2, 5, 19}));
}

TEST_CASE("solver is safe to share across threads") {
  Solver s = solver_k(3);
  Solver reference = solver_k(3);
  std::vector<std::thread> workers;
  std::vector<int> bad(4, 0);
  for (int t = 0; t < 4; ++t) {
    workers.emplace_back([&, t] {
      for (Coord x = 0; x <= 15; ++x) {
        const Position p{x + static_cast<Coord>(t), 2, 15 - x};
        if (s.grundy(p) == 0 && s.classify(p) != Outcome::kP) ++bad[t];
      }
    });
  }
  for (auto& w : workers) w.join();
  for (int b : bad) CHECK(b == 0);
  for (Coord x = 0; x <= 18; ++x) CHECK(s.grundy({x, 2, 3}) == reference.grundy({x, 2, 3}));
}
