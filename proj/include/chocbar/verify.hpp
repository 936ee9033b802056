#pragma once

// Grid sweeps comparing a closed-form predicate against the retrograde oracle.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chocbar/core.hpp"
#include "chocbar/solver.hpp"
#include "chocbar/theory.hpp"

namespace chocbar {

inline constexpr std::string_view kVersion = "chocbar 1.0.0";

enum class RegionPolicy { kValidOnly, kAll, kOutOfRegionOnly };

std::string_view to_string(RegionPolicy p);  // "valid-region", "all", "out-of-region"
RegionPolicy parse_region_policy(std::string_view text);

struct SweepSpec {
  ConjectureFamily family = ConjectureFamily::theorem(0);
  Coord x_max = 0;
  Coord z_max = 0;
  // Top of the y range for the all / out-of-region policies. Defaults to
  // f(x_max, z_max) + k.
  std::optional<Coord> y_max;
  RegionPolicy region = RegionPolicy::kValidOnly;
  // conj-even only: sweep past the family's x,z bound instead of capping.
  bool beyond_bound = false;

  friend bool operator==(const SweepSpec&, const SweepSpec&) = default;
};

struct SweepOptions {
  std::uint64_t budget = kDefaultBudget;
  bool parallel = true;
};

struct Mismatch {
  Position position;
  Outcome predicted = Outcome::kP;
  Outcome oracle = Outcome::kP;

  friend bool operator==(const Mismatch&, const Mismatch&) = default;
};

struct VerificationReport {
  SweepSpec spec;  // bounds as actually swept
  std::uint64_t positions_checked = 0;
  std::vector<Mismatch> mismatches;  // lexicographic by position
  std::int64_t elapsed_ms = 0;
  std::string version{kVersion};

  friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

// Applies the conj-even cap and resolves the default y_max.
SweepSpec normalize(const SweepSpec& spec);

// The state box the sweep needs from the oracle.
Box sweep_box(const SweepSpec& spec);

// Throws ResourceLimit, before doing any work, when the box exceeds the budget.
VerificationReport sweep(const SweepSpec& spec, const SweepOptions& options = {});

// Runs the Grundy route (parallel wavefront table) beside the Boolean route on
// every swept position and lists positions where grundy==0 disagrees with P.
struct OracleAgreement {
  std::uint64_t positions_checked = 0;
  std::vector<Position> disagreements;
};
OracleAgreement check_oracles(const SweepSpec& spec, const SweepOptions& options = {});

std::string export_report(const VerificationReport& report, std::string_view format);
VerificationReport parse_report_json(std::string_view text);

}  // namespace chocbar
