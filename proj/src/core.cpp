#include "chocbar/core.hpp"

#include <algorithm>
#include <charconv>
#include <string>

namespace chocbar {

namespace {

Coord parse_coord(std::string_view text, std::string_view whole) {
  Coord value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc() || ptr != last) {
    throw InvalidArgument("malformed position '" + std::string(whole) +
                          "': expected x,y,z with non-negative integers");
  }
  return value;
}

Coord checked_k(Coord k) {
  if (k == 0) throw InvalidArgument("k must be at least 1");
  if (k > kMaxCoord) throw InvalidArgument("k exceeds 2^40");
  return k;
}

int bit_length(Coord v) {
  int len = 0;
  while (v != 0) {
    ++len;
    v >>= 1;
  }
  return len;
}

}  // namespace

std::string to_string(const Position& p) {
  return std::to_string(p.x) + "," + std::to_string(p.y) + "," + std::to_string(p.z);
}

Position parse_position(std::string_view text) {
  const auto c1 = text.find(',');
  const auto c2 = c1 == std::string_view::npos ? c1 : text.find(',', c1 + 1);
  if (c1 == std::string_view::npos || c2 == std::string_view::npos ||
      text.find(',', c2 + 1) != std::string_view::npos) {
    throw InvalidArgument("malformed position '" + std::string(text) +
                          "': expected x,y,z");
  }
  Position p{parse_coord(text.substr(0, c1), text),
             parse_coord(text.substr(c1 + 1, c2 - c1 - 1), text),
             parse_coord(text.substr(c2 + 1), text)};
  check_position(p);
  return p;
}

void check_position(const Position& p) {
  if (p.x > kMaxCoord || p.y > kMaxCoord || p.z > kMaxCoord) {
    throw InvalidArgument("coordinate exceeds 2^40 in " + to_string(p));
  }
}

std::string_view axis_name(Axis axis) {
  switch (axis) {
    case Axis::kX: return "x";
    case Axis::kY: return "y";
    case Axis::kZ: return "z";
  }
  return "?";
}

Axis parse_axis(std::string_view text) {
  if (text == "x" || text == "X") return Axis::kX;
  if (text == "y" || text == "Y") return Axis::kY;
  if (text == "z" || text == "Z") return Axis::kZ;
  throw InvalidArgument("unknown axis '" + std::string(text) + "'");
}

std::string to_string(const Move& m) {
  return std::string(axis_name(m.axis)) + "->" + std::to_string(m.target) +
         " => " + to_string(m.result);
}

SlopeParams SlopeParams::plain(Coord k) {
  return SlopeParams(checked_k(k), SlopeFamily::kPlain, 0, 0);
}

SlopeParams SlopeParams::odd_4m3(Coord m) {
  if (m > kMaxCoord / 4) throw InvalidArgument("m too large");
  return SlopeParams(checked_k(4 * m + 3), SlopeFamily::kOdd4m3, m, 0);
}

SlopeParams SlopeParams::odd_4m1(Coord m) {
  if (m > kMaxCoord / 4) throw InvalidArgument("m too large");
  return SlopeParams(checked_k(4 * m + 1), SlopeFamily::kOdd4m1, m, 0);
}

SlopeParams SlopeParams::even(Coord a, Coord m) {
  if (a > 38) throw InvalidArgument("a too large");
  const Coord step = Coord{1} << (a + 2);
  if (m > kMaxCoord / step) throw InvalidArgument("m too large");
  return SlopeParams(checked_k(step * m + (Coord{1} << (a + 1))), SlopeFamily::kEven, m, a);
}

bool spot_check_monotone(const HeightFunction& f, Coord limit) {
  const Coord step = std::max<Coord>(1, limit / 16);
  for (Coord x = 0; x <= limit; x += step) {
    for (Coord z = 0; z <= limit; z += step) {
      const Coord here = f(x, z);
      if (x > 0 && f(x - 1, z) > here) return false;
      if (z > 0 && f(x, z - 1) > here) return false;
      if (f(x - x / 2, z - z / 2) > here) return false;
    }
  }
  return true;
}

Coord eval_f(const SlopeParams& params, Coord x, Coord z) { return (x + z) / params.k(); }

Coord nim_sum(std::span<const Coord> values) {
  Coord acc = 0;
  for (Coord v : values) acc ^= v;
  return acc;
}

Coord height_at(const HeightFunction& f, const Position& pos, Coord u, Coord w) {
  if (u > pos.x || w > pos.z) {
    throw InvalidArgument("column (" + std::to_string(u) + "," + std::to_string(w) +
                          ") lies outside bar " + to_string(pos));
  }
  return std::min(f(u, w), pos.y) + 1;
}

std::vector<Move> moves(const HeightFunction& f, const Position& pos) {
  std::vector<Move> out;
  out.reserve(pos.x + pos.y + pos.z);
  for (Coord u = 0; u < pos.x; ++u) {
    out.push_back({Axis::kX, u, {u, std::min(f(u, pos.z), pos.y), pos.z}});
  }
  for (Coord v = 0; v < pos.y; ++v) {
    out.push_back({Axis::kY, v, {pos.x, v, pos.z}});
  }
  for (Coord w = 0; w < pos.z; ++w) {
    out.push_back({Axis::kZ, w, {pos.x, std::min(pos.y, f(pos.x, w)), w}});
  }
  return out;
}

std::vector<Position> move_results(const HeightFunction& f, const Position& pos) {
  std::vector<Position> out;
  for (const Move& m : moves(f, pos)) out.push_back(m.result);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Position apply_move(const HeightFunction& f, const Position& pos, Axis axis,
                    Coord target) {
  const Coord current = axis == Axis::kX ? pos.x : axis == Axis::kY ? pos.y : pos.z;
  if (target >= current) {
    throw IllegalMove("cut " + std::string(axis_name(axis)) + "->" +
                      std::to_string(target) + " is not below current " +
                      std::string(axis_name(axis)) + "=" + std::to_string(current));
  }
  switch (axis) {
    case Axis::kX: return {target, std::min(f(target, pos.z), pos.y), pos.z};
    case Axis::kY: return {pos.x, target, pos.z};
    case Axis::kZ: return {pos.x, std::min(pos.y, f(pos.x, target)), target};
  }
  return pos;
}

bool in_valid_region(const HeightFunction& f, const Position& pos) {
  return pos.y <= f(pos.x, pos.z);
}

BitVector::BitVector(Coord value, int n) : value_(value), n_(n) {
  if (n < 0 || n > 63 || bit_length(value) > n + 1) {
    throw InvalidArgument("value " + std::to_string(value) + " needs more than " +
                          std::to_string(n + 1) + " digits");
  }
}

int shared_top_digit(const Position& pos) {
  const int len = std::max({bit_length(pos.x), bit_length(pos.y), bit_length(pos.z), 1});
  return len - 1;
}

PartialSumContext::PartialSumContext(Coord k, const Position& pos)
    : k_(checked_k(k)),
      n_(shared_top_digit(pos)),
      x_(pos.x, n_),
      y_(pos.y, n_),
      z_(pos.z, n_) {
  check_position(pos);
  sums_.reserve(n_ + 1);
  Wide acc = 0;
  for (int i = n_; i >= 0; --i) {
    const Wide term = Wide{x_.digit(i)} + Wide{z_.digit(i)} -
                      static_cast<Wide>(k_) * Wide{y_.digit(i)};
    acc += term * (Wide{1} << i);
    sums_.push_back(acc);
  }
}

Wide PartialSumContext::s(int t) const {
  if (t < 0 || t > n_) {
    throw InvalidArgument("partial sum index " + std::to_string(t) + " outside 0.." +
                          std::to_string(n_));
  }
  return sums_[static_cast<std::size_t>(t)];
}

PartialSumContext partial_sums(Coord k, const Position& pos) {
  return PartialSumContext(k, pos);
}

std::string wide_to_string(Wide v) {
  if (v == 0) return "0";
  const bool negative = v < 0;
  unsigned __int128 mag = negative ? static_cast<unsigned __int128>(-(v + 1)) + 1
                                   : static_cast<unsigned __int128>(v);
  std::string digits;
  while (mag != 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(mag % 10)));
    mag /= 10;
  }
  if (negative) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

}  // namespace chocbar
