#include "chocbar/kernels.hpp"

#include <algorithm>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace chocbar {

namespace {

void check_box(const Box& box) {
  if (box.x_max > kMaxCoord || box.y_max > kMaxCoord || box.z_max > kMaxCoord) {
    throw InvalidArgument("box exceeds coordinate cap");
  }
}

// mex of the successors' Grundy numbers. `seen` is scratch sized by the caller.
std::uint32_t mex_of_successors(const HeightFunction& f, const GrundyTable& table,
                                const Position& p, std::vector<std::uint8_t>& seen) {
  const std::size_t degree = p.x + p.y + p.z;
  seen.assign(degree + 1, 0);
  auto mark = [&](const Position& q) {
    const std::uint32_t g = table.at(q);
    if (g <= degree) seen[g] = 1;
  };
  for (Coord u = 0; u < p.x; ++u) mark({u, std::min(f(u, p.z), p.y), p.z});
  for (Coord v = 0; v < p.y; ++v) mark({p.x, v, p.z});
  for (Coord w = 0; w < p.z; ++w) mark({p.x, std::min(p.y, f(p.x, w)), w});
  std::uint32_t g = 0;
  while (seen[g] != 0) ++g;
  return g;
}

}  // namespace

std::uint64_t Box::volume() const {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t v = 1;
  for (Coord extent : {x_max, y_max, z_max}) {
    const std::uint64_t len = extent + 1;
    if (v > kMax / len) return kMax;
    v *= len;
  }
  return v;
}

Box hull(const Box& a, const Box& b) {
  return {std::max(a.x_max, b.x_max), std::max(a.y_max, b.y_max),
          std::max(a.z_max, b.z_max)};
}

OutcomeTable::OutcomeTable(Box box) : box_(box) {
  check_box(box);
  cells_.assign(box.volume(), 0);
}

GrundyTable::GrundyTable(Box box) : box_(box) {
  check_box(box);
  cells_.assign(box.volume(), 0);
}

OutcomeTable outcome_table(const HeightFunction& f, const Box& box) {
  OutcomeTable table(box);
  const std::size_t ny = box.y_max + 1;
  const std::size_t nz = box.z_max + 1;
  // p_below_x[y*nz+z]: some u < x has P at the X-cut result {u, min(f(u,z),y), z}.
  std::vector<std::uint8_t> p_below_x(ny * nz, 0);
  // p_below_y[z]: some v < y in the current slice has P at {x,v,z}.
  std::vector<std::uint8_t> p_below_y(nz, 0);

  for (Coord x = 0; x <= box.x_max; ++x) {
    std::fill(p_below_y.begin(), p_below_y.end(), 0);
    for (Coord y = 0; y <= box.y_max; ++y) {
      bool p_below_z = false;
      for (Coord z = 0; z <= box.z_max; ++z) {
        const bool p = !(p_below_x[y * nz + z] || p_below_y[z] || p_below_z);
        table.set_p({x, y, z}, p);
        if (p) p_below_y[z] = 1;
        // Z-cut landing for larger z in this row; its row is <= y, so it is final.
        if (table.is_p({x, std::min(y, f(x, z)), z})) p_below_z = true;
      }
    }
    for (Coord z = 0; z <= box.z_max; ++z) {
      const Coord fz = f(x, z);
      for (Coord y = 0; y <= box.y_max; ++y) {
        if (table.is_p({x, std::min(fz, y), z})) p_below_x[y * nz + z] = 1;
      }
    }
  }
  return table;
}

OutcomeTable outcome_table_naive(const HeightFunction& f, const Box& box) {
  OutcomeTable table(box);
  for (Coord x = 0; x <= box.x_max; ++x) {
    for (Coord y = 0; y <= box.y_max; ++y) {
      for (Coord z = 0; z <= box.z_max; ++z) {
        bool any_p = false;
        for (const Move& m : moves(f, {x, y, z})) {
          if (table.is_p(m.result)) {
            any_p = true;
            break;
          }
        }
        table.set_p({x, y, z}, !any_p);
      }
    }
  }
  return table;
}

GrundyTable grundy_table_serial(const HeightFunction& f, const Box& box) {
  GrundyTable table(box);
  std::vector<std::uint8_t> seen;
  for (Coord x = 0; x <= box.x_max; ++x) {
    for (Coord y = 0; y <= box.y_max; ++y) {
      for (Coord z = 0; z <= box.z_max; ++z) {
        const Position p{x, y, z};
        table.set(p, mex_of_successors(f, table, p, seen));
      }
    }
  }
  return table;
}

GrundyTable grundy_table_parallel(const HeightFunction& f, const Box& box) {
  GrundyTable table(box);
  const Coord top = box.x_max + box.y_max + box.z_max;
  for (Coord level = 0; level <= top; ++level) {
    const Coord yz = box.y_max + box.z_max;
    const std::int64_t x_lo = level > yz ? static_cast<std::int64_t>(level - yz) : 0;
    const std::int64_t x_hi = static_cast<std::int64_t>(std::min(box.x_max, level));
#pragma omp parallel
    {
      std::vector<std::uint8_t> seen;
#pragma omp for schedule(dynamic, 1)
      for (std::int64_t xi = x_lo; xi <= x_hi; ++xi) {
        const Coord x = static_cast<Coord>(xi);
        const Coord rest = level - x;
        const Coord y_lo = rest > box.z_max ? rest - box.z_max : 0;
        const Coord y_hi = std::min(box.y_max, rest);
        for (Coord y = y_lo; y <= y_hi; ++y) {
          const Position p{x, y, rest - y};
          table.set(p, mex_of_successors(f, table, p, seen));
        }
      }
    }
  }
  return table;
}

}  // namespace chocbar
