#pragma once

// Digit-level properties of the partial sums
//   S_t = sum_{i=n-t}^{n} (x_i + z_i - k y_i) 2^i
// checked over exhaustive small configurations and random ones with n <= 24.
// Shared by the unit tests and the acceptance runner.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "chocbar/core.hpp"
#include "chocbar/theory.hpp"

namespace digits {

struct Result {
  std::string name;
  std::uint64_t checked = 0;     // configurations meeting the hypothesis
  std::uint64_t violations = 0;
  std::string first_violation;
};

struct Config {
  std::int64_t k = 1;
  int n = 0;
  std::uint64_t x = 0, y = 0, z = 0;

  int xd(int i) const { return static_cast<int>((x >> i) & 1U); }
  int yd(int i) const { return static_cast<int>((y >> i) & 1U); }
  int zd(int i) const { return static_cast<int>((z >> i) & 1U); }
  bool nim_zero_at(int i) const { return (xd(i) ^ yd(i) ^ zd(i)) == 0; }
  bool nim_zero_top(int t) const {
    for (int i = n; i >= n - t; --i)
      if (!nim_zero_at(i)) return false;
    return true;
  }
  std::int64_t s(int t) const {
    std::int64_t acc = 0;
    for (int i = n; i >= n - t; --i) acc += (xd(i) + zd(i) - k * yd(i)) * (std::int64_t{1} << i);
    return acc;
  }
  std::string describe() const {
    return "k=" + std::to_string(k) + " n=" + std::to_string(n) + " {" + std::to_string(x) + "," +
           std::to_string(y) + "," + std::to_string(z) + "}";
  }
};

inline std::int64_t p2(int i) { return std::int64_t{1} << i; }

inline void note(Result& r, bool ok, const Config& c, int t) {
  ++r.checked;
  if (!ok) {
    if (r.violations++ == 0) r.first_violation = c.describe() + " t=" + std::to_string(t);
  }
}

// Random digits below 2^(n+1). With `nim_top` >= 0 the digits n..n-nim_top get
// y_i = x_i ^ z_i.
inline Config random_config(std::mt19937_64& rng, std::int64_t k, int n, int nim_top) {
  Config c{k, n};
  const std::uint64_t mask = (std::uint64_t{1} << (n + 1)) - 1;
  c.x = rng() & mask;
  c.y = rng() & mask;
  c.z = rng() & mask;
  for (int i = n; i >= n - nim_top && i >= 0; --i) {
    const std::uint64_t bit = std::uint64_t{1} << i;
    c.y = (c.y & ~bit) | ((c.x ^ c.z) & bit);
  }
  return c;
}

template <typename Check>
void exhaustive(const std::vector<std::int64_t>& ks, int n_max, Check&& check) {
  for (std::int64_t k : ks) {
    for (int n = 0; n <= n_max; ++n) {
      const std::uint64_t top = std::uint64_t{1} << (n + 1);
      for (std::uint64_t x = 0; x < top; ++x)
        for (std::uint64_t y = 0; y < top; ++y)
          for (std::uint64_t z = 0; z < top; ++z) check(Config{k, n, x, y, z});
    }
  }
}

inline std::vector<std::int64_t> ks_all() { return {1, 2, 3, 4, 5, 6, 7, 8, 11, 12, 15}; }
inline std::vector<std::int64_t> ks_odd() { return {1, 3, 5, 7, 9, 11, 15}; }
inline std::vector<std::int64_t> ks_4m3() { return {3, 7, 11, 15, 19}; }

// y = f, y > f, y < f  iff  0 <= S_n < k, S_n < 0, S_n >= k.
inline Result band_equivalence(std::uint64_t seed, std::uint64_t random_hits) {
  Result r{"S_n band equivalence"};
  auto check = [&](const Config& c) {
    const std::int64_t f = static_cast<std::int64_t>((c.x + c.z) / c.k);
    const std::int64_t y = static_cast<std::int64_t>(c.y);
    const std::int64_t sn = c.s(c.n);
    const bool ok = ((y == f) == (0 <= sn && sn < c.k)) && ((y > f) == (sn < 0)) &&
                    ((y < f) == (sn >= c.k));
    // Library view of the same comparison.
    const auto rel = chocbar::s_relation(static_cast<chocbar::Coord>(c.k), {c.x, c.y, c.z});
    const bool lib_ok = rel.s_n == static_cast<chocbar::Wide>(static_cast<std::int64_t>(c.x + c.z) -
                                                             c.k * y) &&
                        (rel.tag == chocbar::SRelationTag::kInRange) == (y == f) &&
                        (rel.tag == chocbar::SRelationTag::kBelow) == (y > f);
    note(r, ok && lib_ok, c, c.n);
  };
  exhaustive(ks_all(), 2, check);
  std::mt19937_64 rng(seed);
  for (std::uint64_t i = 0; i < random_hits; ++i) {
    const std::int64_t k = 1 + static_cast<std::int64_t>(rng() % 200);
    const int n = static_cast<int>(rng() % 25);
    // Bias y towards f so the y == f band is exercised.
    Config c = random_config(rng, k, n, -1);
    if (i % 2 == 0) {
      const std::uint64_t f = (c.x + c.z) / static_cast<std::uint64_t>(k);
      const auto d = rng() % 3;
      c.y = d == 0 && f > 0 ? f - 1 : f + (d == 2 ? 1 : 0);
      c.n = std::max(c.n, static_cast<int>(std::bit_width(c.y)) - 1);
    }
    check(c);
  }
  return r;
}

// k odd, digits n..n-t nim-zero  =>  S_t = a 2^(n-t) with a even.
inline Result even_multiple(std::uint64_t seed, std::uint64_t random_hits) {
  Result r{"nim-zero prefix gives an even multiple"};
  auto check_t = [&](const Config& c, int t) {
    if (!c.nim_zero_top(t)) return;
    const std::int64_t s = c.s(t);
    const std::int64_t unit = p2(c.n - t);
    note(r, s % unit == 0 && (s / unit) % 2 == 0, c, t);
  };
  exhaustive(ks_odd(), 3, [&](const Config& c) {
    for (int t = 0; t <= c.n; ++t) check_t(c, t);
  });
  std::mt19937_64 rng(seed);
  const std::uint64_t goal = r.checked + random_hits;
  while (r.checked < goal) {
    const std::int64_t k = 2 * static_cast<std::int64_t>(rng() % 100) + 1;
    const int n = static_cast<int>(rng() % 25);
    const int t = static_cast<int>(rng() % (n + 1));
    check_t(random_config(rng, k, n, t), t);
  }
  return r;
}

// k odd, digits n..n-t nim-zero, S_t < 0  =>  S_j < 0 for all j > t.
inline Result negative_persists(std::uint64_t seed, std::uint64_t random_hits) {
  Result r{"negative partial sum persists"};
  auto check_t = [&](const Config& c, int t) {
    if (!c.nim_zero_top(t) || c.s(t) >= 0) return;
    bool ok = true;
    for (int j = t + 1; j <= c.n; ++j) ok = ok && c.s(j) < 0;
    note(r, ok, c, t);
  };
  exhaustive(ks_odd(), 3, [&](const Config& c) {
    for (int t = 0; t <= c.n; ++t) check_t(c, t);
  });
  std::mt19937_64 rng(seed);
  const std::uint64_t goal = r.checked + random_hits;
  while (r.checked < goal) {
    const std::int64_t k = 2 * static_cast<std::int64_t>(rng() % 100) + 1;
    const int n = static_cast<int>(rng() % 25);
    const int t = static_cast<int>(rng() % (n + 1));
    check_t(random_config(rng, k, n, t), t);
  }
  return r;
}

// S_t >= k 2^(n-t)  =>  S_j >= k 2^(n-j) for all j > t.
inline Result large_persists(std::uint64_t seed, std::uint64_t random_hits) {
  Result r{"large partial sum persists"};
  auto check_t = [&](const Config& c, int t) {
    if (c.s(t) < c.k * p2(c.n - t)) return;
    bool ok = true;
    for (int j = t + 1; j <= c.n; ++j) ok = ok && c.s(j) >= c.k * p2(c.n - j);
    note(r, ok, c, t);
  };
  exhaustive(ks_all(), 3, [&](const Config& c) {
    for (int t = 0; t <= c.n; ++t) check_t(c, t);
  });
  std::mt19937_64 rng(seed);
  const std::uint64_t goal = r.checked + random_hits;
  while (r.checked < goal) {
    const std::int64_t k = 1 + static_cast<std::int64_t>(rng() % 20);
    const int n = static_cast<int>(rng() % 25);
    const int t = static_cast<int>(rng() % (n + 1));
    Config c = random_config(rng, k, n, -1);
    // Fill the top t+1 digits of x and z so the hypothesis is reachable.
    for (int i = c.n; i >= c.n - t; --i) {
      if (rng() % 4 != 0) c.x |= std::uint64_t{1} << i;
      if (rng() % 4 != 0) c.z |= std::uint64_t{1} << i;
    }
    check_t(c, t);
  }
  return r;
}

// k = 4m+3, 0 <= S_t <= 2m 2^(n-t): a {1,1,0}/{0,1,1} next digit makes S
// negative; a {1,0,1}/{0,0,0} next digit keeps 0 <= S < k 2^(n-t-1).
inline Result low_band_step(std::uint64_t seed, std::uint64_t random_hits) {
  Result r{"low band step classification"};
  auto check_t = [&](const Config& c, int t) {
    if (t >= c.n) return;
    const std::int64_t m = (c.k - 3) / 4;
    const std::int64_t s = c.s(t);
    if (s < 0 || s > 2 * m * p2(c.n - t)) return;
    const int i = c.n - t - 1;
    const int xi = c.xd(i), yi = c.yd(i), zi = c.zd(i);
    const std::int64_t next = c.s(t + 1);
    if (yi == 1 && xi + zi == 1) {
      note(r, next < 0, c, t);
    } else if (yi == 0 && xi == zi) {
      note(r, 0 <= next && next < c.k * p2(i), c, t);
    }
  };
  exhaustive(ks_4m3(), 3, [&](const Config& c) {
    for (int t = 0; t <= c.n; ++t) check_t(c, t);
  });
  std::mt19937_64 rng(seed);
  const std::uint64_t goal = r.checked + random_hits;
  while (r.checked < goal) {
    const std::int64_t k = 4 * static_cast<std::int64_t>(rng() % 50) + 3;
    const int n = 1 + static_cast<int>(rng() % 24);
    const int t = static_cast<int>(rng() % n);
    check_t(random_config(rng, k, n, t + static_cast<int>(rng() % 2)), t);
  }
  return r;
}

// k = 4m+3, digits n..n-t nim-zero, (2m+2) 2^(n-t) <= S_t < k 2^(n-t):
// a {1,1,0}/{0,1,1} next digit gives 0 <= S < k 2^(n-t-1); a {1,0,1}/{0,0,0}
// next digit gives S >= k 2^(n-t-1).
inline Result high_band_step(std::uint64_t seed, std::uint64_t random_hits) {
  Result r{"high band step classification"};
  auto check_t = [&](const Config& c, int t) {
    if (t >= c.n || !c.nim_zero_top(t)) return;
    const std::int64_t m = (c.k - 3) / 4;
    const std::int64_t s = c.s(t);
    if (s < (2 * m + 2) * p2(c.n - t) || s >= c.k * p2(c.n - t)) return;
    const int i = c.n - t - 1;
    const int xi = c.xd(i), yi = c.yd(i), zi = c.zd(i);
    const std::int64_t next = c.s(t + 1);
    if (yi == 1 && xi + zi == 1) {
      note(r, 0 <= next && next < c.k * p2(i), c, t);
    } else if (yi == 0 && xi == zi) {
      note(r, next >= c.k * p2(i), c, t);
    }
  };
  exhaustive(ks_4m3(), 3, [&](const Config& c) {
    for (int t = 0; t <= c.n; ++t) check_t(c, t);
  });
  std::mt19937_64 rng(seed);
  const std::uint64_t goal = r.checked + random_hits;
  while (r.checked < goal) {
    const std::int64_t k = 4 * static_cast<std::int64_t>(rng() % 50) + 3;
    const int n = 1 + static_cast<int>(rng() % 24);
    const int t = static_cast<int>(rng() % n);
    Config c = random_config(rng, k, n, t + 1);
    // Keep y small in the prefix so the high band is reachable.
    if (rng() % 2 == 0) {
      for (int i = c.n; i >= c.n - t; --i) {
        const std::uint64_t bit = std::uint64_t{1} << i;
        if ((c.y & bit) != 0 && rng() % 3 != 0) {
          c.y &= ~bit;
          c.x |= bit;
          c.z |= bit;
        }
      }
    }
    check_t(c, t);
  }
  return r;
}

inline std::vector<Result> run_all(std::uint64_t seed, std::uint64_t random_hits) {
  return {band_equivalence(seed, random_hits), even_multiple(seed + 1, random_hits),
          negative_persists(seed + 2, random_hits), large_persists(seed + 3, random_hits),
          low_band_step(seed + 4, random_hits), high_band_step(seed + 5, random_hits)};
}

}  // namespace digits
