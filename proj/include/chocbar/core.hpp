#pragma once

// Game geometry for three-dimensional chocolate bars: positions, the height
// function, the three cut families, nim arithmetic and base-2 partial sums.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chocbar/errors.hpp"

namespace chocbar {

using Coord = std::uint64_t;
using Wide = __int128;

// Per-axis coordinate cap. Keeps every partial sum well inside 128 bits.
inline constexpr Coord kMaxCoord = Coord{1} << 40;

// A bar of length x+1, height y+1 and width z+1. {0,0,0} is the lone bitter box.
struct Position {
  Coord x = 0;
  Coord y = 0;
  Coord z = 0;

  bool terminal() const { return x == 0 && y == 0 && z == 0; }
  friend auto operator<=>(const Position&, const Position&) = default;
};

struct PositionHash {
  std::size_t operator()(const Position& p) const noexcept {
    std::uint64_t h = p.x * 0x9E3779B97F4A7C15ULL;
    h ^= (p.y + 0x632BE59BD9B4E019ULL + (h << 6) + (h >> 2));
    h ^= (p.z + 0x85EBCA77C2B2AE63ULL + (h << 6) + (h >> 2));
    return static_cast<std::size_t>(h);
  }
};

// Canonical "x,y,z" form, decimal, no spaces.
std::string to_string(const Position& p);
Position parse_position(std::string_view text);
// Throws InvalidArgument when a coordinate exceeds kMaxCoord.
void check_position(const Position& p);

enum class Axis { kX, kY, kZ };

std::string_view axis_name(Axis axis);  // "x", "y", "z"
Axis parse_axis(std::string_view text);

struct Move {
  Axis axis = Axis::kX;
  Coord target = 0;
  Position result;

  friend bool operator==(const Move&, const Move&) = default;
};

std::string to_string(const Move& m);  // e.g. "x->9 => 9,3,10"

enum class SlopeFamily { kPlain, kOdd4m3, kOdd4m1, kEven };

// The divisor k of f(x,z) = floor((x+z)/k), optionally tagged with the
// decomposition that names its family.
class SlopeParams {
 public:
  static SlopeParams plain(Coord k);
  static SlopeParams odd_4m3(Coord m);      // k = 4m+3
  static SlopeParams odd_4m1(Coord m);      // k = 4m+1
  static SlopeParams even(Coord a, Coord m);  // k = 2^(a+2) m + 2^(a+1)

  Coord k() const { return k_; }
  SlopeFamily family() const { return family_; }
  Coord m() const { return m_; }
  Coord a() const { return a_; }

  friend bool operator==(const SlopeParams&, const SlopeParams&) = default;

 private:
  SlopeParams(Coord k, SlopeFamily family, Coord m, Coord a)
      : k_(k), family_(family), m_(m), a_(a) {}

  Coord k_;
  SlopeFamily family_;
  Coord m_;
  Coord a_;
};

// Monotone column-height bound f(u,w).
class HeightFunction {
 public:
  virtual ~HeightFunction() = default;
  virtual Coord operator()(Coord x, Coord z) const = 0;
  // Stable identity used to key caches.
  virtual std::string id() const = 0;
};

class FloorSlope final : public HeightFunction {
 public:
  explicit FloorSlope(SlopeParams params) : params_(params) {}
  explicit FloorSlope(Coord k) : params_(SlopeParams::plain(k)) {}

  Coord operator()(Coord x, Coord z) const override { return (x + z) / params_.k(); }
  std::string id() const override { return "floor/" + std::to_string(params_.k()); }
  const SlopeParams& params() const { return params_; }

 private:
  SlopeParams params_;
};

// Sampled check of u<=x, v<=z => f(u,v) <= f(x,z) on [0,limit]^2.
bool spot_check_monotone(const HeightFunction& f, Coord limit);

Coord eval_f(const SlopeParams& params, Coord x, Coord z);

Coord nim_sum(std::span<const Coord> values);
inline Coord nim_sum(std::initializer_list<Coord> values) {
  return nim_sum(std::span<const Coord>(values.begin(), values.size()));
}

// min(f(u,w), y) + 1 for a column inside the bar footprint.
Coord height_at(const HeightFunction& f, const Position& pos, Coord u, Coord w);

// All cuts, ordered X then Y then Z with ascending target. Cuts on different
// axes that land on the same position are kept.
std::vector<Move> moves(const HeightFunction& f, const Position& pos);
// Distinct successor positions, sorted lexicographically.
std::vector<Position> move_results(const HeightFunction& f, const Position& pos);

Position apply_move(const HeightFunction& f, const Position& pos, Axis axis,
                    Coord target);

// y <= f(x,z).
bool in_valid_region(const HeightFunction& f, const Position& pos);

// Little-endian base-2 digits 0..n of a value.
class BitVector {
 public:
  BitVector(Coord value, int n);

  int n() const { return n_; }
  int digit(int i) const { return static_cast<int>((value_ >> i) & 1U); }
  Coord value() const { return value_; }

 private:
  Coord value_;
  int n_;
};

// Index of the top digit shared by x, y and z (at least 0).
int shared_top_digit(const Position& pos);

// S_t = sum_{i=n-t}^{n} (x_i + z_i - k y_i) 2^i, t = 0..n.
class PartialSumContext {
 public:
  PartialSumContext(Coord k, const Position& pos);

  Coord k() const { return k_; }
  int n() const { return n_; }
  const BitVector& x_bits() const { return x_; }
  const BitVector& y_bits() const { return y_; }
  const BitVector& z_bits() const { return z_; }
  Wide s(int t) const;
  Wide s_n() const { return sums_.back(); }

 private:
  Coord k_;
  int n_;
  BitVector x_;
  BitVector y_;
  BitVector z_;
  std::vector<Wide> sums_;
};

PartialSumContext partial_sums(Coord k, const Position& pos);

std::string wide_to_string(Wide v);

}  // namespace chocbar
