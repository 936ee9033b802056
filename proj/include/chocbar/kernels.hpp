#pragma once

// Dense retrograde tables over a box [0,x_max] x [0,y_max] x [0,z_max].
//
// Every cut strictly lowers x+y+z, and no cut raises any coordinate, so a box
// is closed under moves and positions of equal coordinate sum are mutually
// independent. The parallel Grundy kernel sweeps those level sets as
// wavefronts; the serial kernels are kept as references.

#include <cstdint>
#include <vector>

#include "chocbar/core.hpp"

namespace chocbar {

struct Box {
  Coord x_max = 0;
  Coord y_max = 0;
  Coord z_max = 0;

  // Saturates at UINT64_MAX.
  std::uint64_t volume() const;
  bool contains(const Position& p) const {
    return p.x <= x_max && p.y <= y_max && p.z <= z_max;
  }
  static Box around(const Position& p) { return {p.x, p.y, p.z}; }
  friend bool operator==(const Box&, const Box&) = default;
};

Box hull(const Box& a, const Box& b);

class OutcomeTable {
 public:
  explicit OutcomeTable(Box box);

  const Box& box() const { return box_; }
  bool is_p(const Position& p) const { return cells_[index(p)] != 0; }
  void set_p(const Position& p, bool value) { cells_[index(p)] = value ? 1 : 0; }

 private:
  std::size_t index(const Position& p) const {
    return (static_cast<std::size_t>(p.x) * (box_.y_max + 1) + p.y) * (box_.z_max + 1) + p.z;
  }

  Box box_;
  std::vector<std::uint8_t> cells_;
};

class GrundyTable {
 public:
  explicit GrundyTable(Box box);

  const Box& box() const { return box_; }
  std::uint32_t at(const Position& p) const { return cells_[index(p)]; }
  void set(const Position& p, std::uint32_t g) { cells_[index(p)] = g; }

  friend bool operator==(const GrundyTable&, const GrundyTable&) = default;

 private:
  std::size_t index(const Position& p) const {
    return (static_cast<std::size_t>(p.x) * (box_.y_max + 1) + p.y) * (box_.z_max + 1) + p.z;
  }

  Box box_;
  std::vector<std::uint32_t> cells_;
};

// Boolean retrograde pass: P iff no successor is P. Constant work per state
// using running "some P below" flags along each cut family.
OutcomeTable outcome_table(const HeightFunction& f, const Box& box);

// P/N by direct successor inspection, one state at a time. Reference for
// outcome_table.
OutcomeTable outcome_table_naive(const HeightFunction& f, const Box& box);

// Grundy numbers in lexicographic order, mex over every successor.
GrundyTable grundy_table_serial(const HeightFunction& f, const Box& box);

// Same values; OpenMP over each x+y+z level set.
GrundyTable grundy_table_parallel(const HeightFunction& f, const Box& box);

}  // namespace chocbar
