#pragma once

// Closed-form P-position predicates for floor-slope bars and the digit-by-digit
// construction of a winning cut for k = 4m+3.

#include <string>
#include <string_view>

#include "chocbar/core.hpp"

namespace chocbar {

enum class Statement { kTheorem4m3, kConjectureEven, kConjecture4m1 };

std::string_view to_string(Statement s);  // "theorem", "conj-even", "conj-4m1"
Statement parse_statement(std::string_view text);

// Which closed form applies, with its parameters. For conj-even the predicate
// is only claimed for x, z <= bound().
class ConjectureFamily {
 public:
  static ConjectureFamily theorem(Coord m);         // k = 4m+3
  static ConjectureFamily even(Coord a, Coord m);   // k = 2^(a+2) m + 2^(a+1)
  static ConjectureFamily odd_4m1(Coord m);         // k = 4m+1
  // Picks the family matching k; throws FamilyMismatch when none does.
  static ConjectureFamily for_statement(Statement s, Coord k);

  Statement statement() const { return statement_; }
  const SlopeParams& params() const { return params_; }
  Coord k() const { return params_.k(); }
  bool conjectural() const { return statement_ != Statement::kTheorem4m3; }
  // (2^(2a+2) - 2^(a+1)) m + 2^(2a+1) - 1 for conj-even; kMaxCoord otherwise.
  Coord bound() const { return bound_; }
  std::string describe() const;

  friend bool operator==(const ConjectureFamily&, const ConjectureFamily&) = default;

 private:
  ConjectureFamily(Statement s, SlopeParams params, Coord bound)
      : statement_(s), params_(params), bound_(bound) {}

  Statement statement_;
  SlopeParams params_;
  Coord bound_;
};

struct Prediction {
  bool is_p = false;
  // False when the position lies outside the region the statement covers
  // (y > f(x,z) for the odd families).
  bool in_scope = true;
  bool conjectural = false;
};

// x ^ y ^ z == 0, for k = 4m+3.
Prediction p_closed_form_odd(const SlopeParams& params, const Position& pos);
// (x+1) ^ y ^ (z+1) == 0, for k = 4m+1.
Prediction p_closed_form_4m1(const SlopeParams& params, const Position& pos);
// x ^ y ^ z == 0 within the even family's bound.
Prediction p_closed_form_even(const ConjectureFamily& family, const Position& pos);
// Dispatches on family.statement().
Prediction predict(const ConjectureFamily& family, const Position& pos);

enum class SRelationTag { kBelow, kInRange, kAbove };  // y > f, y == f, y < f

std::string_view to_string(SRelationTag tag);

struct SRelation {
  SRelationTag tag = SRelationTag::kInRange;
  Wide s_n = 0;
};

SRelation s_relation(Coord k, const Position& pos);

// The five shapes of winning cut out of a nim-nonzero valid-region position:
//   1: x -> u keeping y;        2: x -> u with y clamped to f(u,z);
//   3: y -> v;                  4: z -> w keeping y;
//   5: z -> w with y clamped to f(x,w).
enum class WinningCase { k1 = 1, k2 = 2, k3 = 3, k4 = 4, k5 = 5 };

struct ConstructedMove {
  Move move;
  WinningCase which = WinningCase::k1;
};

// Builds the winning cut from the base-2 digits without searching. Requires
// k = 4m+3, x^y^z != 0 and y <= f(x,z); throws NotApplicable otherwise.
ConstructedMove construct_winning_move(const SlopeParams& params, const Position& pos);

}  // namespace chocbar
