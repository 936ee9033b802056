#include "chocbar/theory.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace chocbar {

namespace {

int digit(Coord v, int i) { return static_cast<int>((v >> i) & 1U); }

Wide pow2(int i) { return Wide{1} << i; }

void require_k_mod4(const SlopeParams& params, Coord residue, std::string_view what) {
  if (params.k() % 4 != residue) {
    throw FamilyMismatch(std::string(what) + " needs k = 4m+" + std::to_string(residue) +
                         ", got k=" + std::to_string(params.k()));
  }
}

struct DigitCut {
  Coord cut = 0;      // new value of the cut coordinate
  Coord height = 0;   // y after the cut
  bool reduced = false;
};

// Cut `own` (x or z; f is symmetric in them) while the other footprint
// coordinate `other` stays. Digits above `top` are kept, digit `top` drops
// from 1 to 0, and each lower digit is chosen so that the running partial sum
// S stays >= 0. Once y has been forced down, S is held in [0, k 2^i) so that
// the final y equals f exactly.
DigitCut digit_cut(Coord k, Coord m, Coord own, Coord y, Coord other, int top) {
  const Wide kk = static_cast<Wide>(k);
  const Wide mm = static_cast<Wide>(m);
  const int shift = top + 1;
  Wide s = shift >= 63 ? Wide{0}
                       : (static_cast<Wide>(own >> shift) + static_cast<Wide>(other >> shift) -
                          kk * static_cast<Wide>(y >> shift)) *
                             pow2(shift);
  Coord cut = shift >= 63 ? 0 : (own >> shift) << shift;
  Coord height = shift >= 63 ? 0 : (y >> shift) << shift;
  bool reduced = false;
  if (s < 0) throw std::logic_error("digit_cut: high partial sum negative");

  for (int i = top - 1; i >= 0; --i) {
    const Wide scale = pow2(i + 1);
    const int yi = digit(y, i);
    const int ci = digit(other, i);
    int cut_digit = 0;
    int height_digit = 0;
    if (!reduced && s >= kk * scale) {
      // Already S >= k 2^(i+1): any tail keeps y below f.
      cut_digit = yi ^ ci;
      height_digit = yi;
    } else if (s <= 2 * mm * scale) {
      // Low band: a (1,1,0)/(0,1,1) digit would drive S negative.
      cut_digit = ci;
      height_digit = 0;
      if (yi == 1) reduced = true;
    } else {
      // High band, (2m+2) 2^(i+1) <= S < k 2^(i+1).
      if (!reduced) {
        cut_digit = yi ^ ci;
        height_digit = yi;
      } else {
        cut_digit = 1 - ci;
        height_digit = 1;
      }
    }
    s += static_cast<Wide>(cut_digit + ci - static_cast<Wide>(k) * height_digit) * pow2(i);
    if (s < 0 || (reduced && s >= kk * pow2(i))) {
      throw std::logic_error("digit_cut: partial sum left its band");
    }
    cut |= static_cast<Coord>(cut_digit) << i;
    height |= static_cast<Coord>(height_digit) << i;
  }
  return {cut, reduced ? height : y, reduced};
}

}  // namespace

std::string_view to_string(Statement s) {
  switch (s) {
    case Statement::kTheorem4m3: return "theorem";
    case Statement::kConjectureEven: return "conj-even";
    case Statement::kConjecture4m1: return "conj-4m1";
  }
  return "?";
}

Statement parse_statement(std::string_view text) {
  if (text == "theorem") return Statement::kTheorem4m3;
  if (text == "conj-even") return Statement::kConjectureEven;
  if (text == "conj-4m1") return Statement::kConjecture4m1;
  throw InvalidArgument("unknown statement '" + std::string(text) + "'");
}

ConjectureFamily ConjectureFamily::theorem(Coord m) {
  return {Statement::kTheorem4m3, SlopeParams::odd_4m3(m), kMaxCoord};
}

ConjectureFamily ConjectureFamily::odd_4m1(Coord m) {
  return {Statement::kConjecture4m1, SlopeParams::odd_4m1(m), kMaxCoord};
}

ConjectureFamily ConjectureFamily::even(Coord a, Coord m) {
  const SlopeParams params = SlopeParams::even(a, m);
  const Wide wa = static_cast<Wide>(a);
  const Wide bound = (pow2(static_cast<int>(2 * wa + 2)) - pow2(static_cast<int>(wa + 1))) *
                         static_cast<Wide>(m) +
                     pow2(static_cast<int>(2 * wa + 1)) - 1;
  const Coord capped = bound > static_cast<Wide>(kMaxCoord) ? kMaxCoord : static_cast<Coord>(bound);
  return {Statement::kConjectureEven, params, capped};
}

ConjectureFamily ConjectureFamily::for_statement(Statement s, Coord k) {
  const SlopeParams plain = SlopeParams::plain(k);
  switch (s) {
    case Statement::kTheorem4m3:
      require_k_mod4(plain, 3, "theorem");
      return theorem(k / 4);
    case Statement::kConjecture4m1:
      require_k_mod4(plain, 1, "conj-4m1");
      return odd_4m1(k / 4);
    case Statement::kConjectureEven: {
      if (k % 2 != 0) {
        throw FamilyMismatch("conj-even needs even k, got k=" + std::to_string(k));
      }
      // k = 2^(a+1) (2m+1)
      const int twos = std::countr_zero(k);
      const Coord odd = k >> twos;
      return even(static_cast<Coord>(twos - 1), (odd - 1) / 2);
    }
  }
  throw InvalidArgument("unknown statement");
}

std::string ConjectureFamily::describe() const {
  switch (statement_) {
    case Statement::kTheorem4m3:
      return "k=4m+3 (m=" + std::to_string(params_.m()) + "): P iff x^y^z=0";
    case Statement::kConjecture4m1:
      return "k=4m+1 (m=" + std::to_string(params_.m()) + "): P iff (x+1)^y^(z+1)=0 [conjectural]";
    case Statement::kConjectureEven:
      return "k=2^(a+2)m+2^(a+1) (a=" + std::to_string(params_.a()) +
             ", m=" + std::to_string(params_.m()) + "), x,z<=" + std::to_string(bound_) +
             ": P iff x^y^z=0 [conjectural]";
  }
  return {};
}

Prediction p_closed_form_odd(const SlopeParams& params, const Position& pos) {
  require_k_mod4(params, 3, "theorem");
  const FloorSlope f(params);
  return {nim_sum({pos.x, pos.y, pos.z}) == 0, in_valid_region(f, pos), false};
}

Prediction p_closed_form_4m1(const SlopeParams& params, const Position& pos) {
  require_k_mod4(params, 1, "conj-4m1");
  const FloorSlope f(params);
  return {nim_sum({pos.x + 1, pos.y, pos.z + 1}) == 0, in_valid_region(f, pos), true};
}

Prediction p_closed_form_even(const ConjectureFamily& family, const Position& pos) {
  if (family.statement() != Statement::kConjectureEven) {
    throw FamilyMismatch("p_closed_form_even needs a conj-even family");
  }
  if (pos.x > family.bound() || pos.z > family.bound()) {
    throw OutOfDomain("position " + to_string(pos) + " exceeds x,z <= " +
                      std::to_string(family.bound()));
  }
  const FloorSlope f(family.params());
  return {nim_sum({pos.x, pos.y, pos.z}) == 0, in_valid_region(f, pos), true};
}

Prediction predict(const ConjectureFamily& family, const Position& pos) {
  switch (family.statement()) {
    case Statement::kTheorem4m3: return p_closed_form_odd(family.params(), pos);
    case Statement::kConjecture4m1: return p_closed_form_4m1(family.params(), pos);
    case Statement::kConjectureEven: return p_closed_form_even(family, pos);
  }
  throw InvalidArgument("unknown statement");
}

std::string_view to_string(SRelationTag tag) {
  switch (tag) {
    case SRelationTag::kBelow: return "below";
    case SRelationTag::kInRange: return "in-range";
    case SRelationTag::kAbove: return "above";
  }
  return "?";
}

SRelation s_relation(Coord k, const Position& pos) {
  const Wide s_n = partial_sums(k, pos).s_n();
  SRelationTag tag = SRelationTag::kInRange;
  if (s_n < 0) {
    tag = SRelationTag::kBelow;
  } else if (s_n >= static_cast<Wide>(k)) {
    tag = SRelationTag::kAbove;
  }
  return {tag, s_n};
}

ConstructedMove construct_winning_move(const SlopeParams& params, const Position& pos) {
  require_k_mod4(params, 3, "construct_winning_move");
  check_position(pos);
  const FloorSlope f(params);
  const Coord nim = nim_sum({pos.x, pos.y, pos.z});
  if (nim == 0) throw NotApplicable(to_string(pos) + " has nim-sum 0");
  if (!in_valid_region(f, pos)) {
    throw NotApplicable(to_string(pos) + " lies outside y <= f(x,z)");
  }
  const Coord k = params.k();
  const Coord m = k / 4;
  const int top = std::bit_width(nim) - 1;

  ConstructedMove out;
  const Coord u = pos.y ^ pos.z;
  if (u < pos.x && pos.y <= f(u, pos.z)) {
    out = {{Axis::kX, u, {u, pos.y, pos.z}}, WinningCase::k1};
  } else if (digit(pos.y, top) == 1) {
    const Coord v = pos.x ^ pos.z;
    out = {{Axis::kY, v, {pos.x, v, pos.z}}, WinningCase::k3};
  } else if (digit(pos.x, top) == 1) {
    const DigitCut c = digit_cut(k, m, pos.x, pos.y, pos.z, top);
    out = {{Axis::kX, c.cut, {c.cut, c.height, pos.z}},
           c.reduced ? WinningCase::k2 : WinningCase::k1};
  } else {
    const DigitCut c = digit_cut(k, m, pos.z, pos.y, pos.x, top);
    out = {{Axis::kZ, c.cut, {pos.x, c.height, c.cut}},
           c.reduced ? WinningCase::k5 : WinningCase::k4};
  }

  if (apply_move(f, pos, out.move.axis, out.move.target) != out.move.result ||
      nim_sum({out.move.result.x, out.move.result.y, out.move.result.z}) != 0) {
    throw std::logic_error("construct_winning_move produced an inconsistent cut from " +
                           to_string(pos));
  }
  return out;
}

}  // namespace chocbar
