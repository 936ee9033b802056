#include <doctest.h>

#include <algorithm>

#include "brute_force.hpp"
#include "chocbar/verify.hpp"

using namespace chocbar;

namespace {

SweepSpec theorem_spec(Coord k, Coord xz, RegionPolicy region = RegionPolicy::kValidOnly) {
  SweepSpec spec;
  spec.family = ConjectureFamily::for_statement(Statement::kTheorem4m3, k);
  spec.x_max = xz;
  spec.z_max = xz;
  spec.region = region;
  return spec;
}

std::uint64_t valid_count(Coord k, Coord xz) {
  std::uint64_t n = 0;
  for (Coord x = 0; x <= xz; ++x)
    for (Coord z = 0; z <= xz; ++z) n += brute::f(k, x, z) + 1;
  return n;
}

}  // namespace

TEST_CASE("theorem sweeps are clean in the valid region") {
  for (Coord k : {3, 7, 11}) {
    const auto report = sweep(theorem_spec(k, 40));
    CHECK(report.mismatches.empty());
    CHECK(report.positions_checked == valid_count(k, 40));
    CHECK(report.version == kVersion);
  }
  CHECK(sweep(theorem_spec(3, 40)).positions_checked == 23534);
}

TEST_CASE("all-positions policy exposes the scope boundary") {
  const auto report = sweep(theorem_spec(3, 3, RegionPolicy::kAll));
  const Mismatch expected{{1, 1, 0}, Outcome::kP, Outcome::kN};
  CHECK(std::find(report.mismatches.begin(), report.mismatches.end(), expected) !=
        report.mismatches.end());
  CHECK(std::is_sorted(report.mismatches.begin(), report.mismatches.end(),
                       [](const Mismatch& a, const Mismatch& b) { return a.position < b.position; }));
  // Every mismatch lies outside the valid region.
  const FloorSlope f(3);
  for (const Mismatch& m : report.mismatches) CHECK_FALSE(in_valid_region(f, m.position));

  const auto outside = sweep(theorem_spec(3, 3, RegionPolicy::kOutOfRegionOnly));
  CHECK(outside.mismatches == report.mismatches);
  CHECK(outside.positions_checked + valid_count(3, 3) == report.positions_checked);
  CHECK(*report.spec.y_max == 2 + 3);
}

TEST_CASE("degenerate box") {
  const auto report = sweep(theorem_spec(3, 0));
  CHECK(report.positions_checked == 1);
  CHECK(report.mismatches.empty());
}

TEST_CASE("parallel and serial sweeps agree") {
  for (Coord k : {3, 7}) {
    for (RegionPolicy r : {RegionPolicy::kValidOnly, RegionPolicy::kAll}) {
      auto a = sweep(theorem_spec(k, 25, r), {kDefaultBudget, true});
      auto b = sweep(theorem_spec(k, 25, r), {kDefaultBudget, false});
      a.elapsed_ms = b.elapsed_ms = 0;
      CHECK(a == b);
    }
  }
}

TEST_CASE("report export") {
  const auto report = sweep(theorem_spec(3, 10));
  const std::string json = export_report(report, "json");
  CHECK(json.find("\"mismatches\": []") != std::string::npos);
  CHECK(json.find("\"version\": \"chocbar 1.0.0\"") != std::string::npos);
  CHECK(parse_report_json(json) == report);

  const std::string csv = export_report(report, "csv");
  CHECK(csv == "x,y,z,predicted,oracle\n");

  const auto scoped = sweep(theorem_spec(3, 3, RegionPolicy::kAll));
  const std::string csv2 = export_report(scoped, "csv");
  CHECK(csv2.find("\n1,1,0,P,N\n") != std::string::npos);
  CHECK(parse_report_json(export_report(scoped, "json")) == scoped);

  CHECK_THROWS_AS(export_report(report, "xml"), InvalidArgument);
  CHECK_THROWS_AS(parse_report_json("{\"nope\": 1}"), InvalidArgument);
  CHECK_THROWS_AS(parse_report_json("not json"), InvalidArgument);
}

TEST_CASE("sweep budget is checked before any work") {
  CHECK_THROWS_AS(sweep(theorem_spec(3, 40), {1000, true}), ResourceLimit);
  CHECK_NOTHROW(sweep(theorem_spec(3, 5), {1000, true}));
}

TEST_CASE("even family sweeps cap at the bound") {
  SweepSpec spec;
  spec.family = ConjectureFamily::even(1, 0);
  spec.x_max = 30;
  spec.z_max = 30;
  const auto capped = sweep(spec);
  CHECK(capped.spec.x_max == 7);
  CHECK(capped.spec.z_max == 7);
  CHECK(capped.mismatches.empty());

  spec.beyond_bound = true;
  spec.x_max = spec.z_max = 12;
  const auto beyond = sweep(spec);
  CHECK(beyond.spec.x_max == 12);
}

TEST_CASE("region policy text forms") {
  CHECK(parse_region_policy("valid-region") == RegionPolicy::kValidOnly);
  CHECK(parse_region_policy("valid") == RegionPolicy::kValidOnly);
  CHECK(parse_region_policy("all") == RegionPolicy::kAll);
  CHECK(parse_region_policy("out-of-region") == RegionPolicy::kOutOfRegionOnly);
  CHECK_THROWS_AS(parse_region_policy("some"), InvalidArgument);
}

TEST_CASE("oracle routes agree") {
  for (Coord k : {1, 3, 4, 7}) {
    for (bool parallel : {true, false}) {
      SweepSpec spec = theorem_spec(3, 20, RegionPolicy::kAll);
      spec.family = k % 4 == 3 ? ConjectureFamily::for_statement(Statement::kTheorem4m3, k)
                    : k % 2 == 0 ? ConjectureFamily::for_statement(Statement::kConjectureEven, k)
                                 : ConjectureFamily::for_statement(Statement::kConjecture4m1, k);
      spec.beyond_bound = true;
      const auto agreement = check_oracles(spec, {kDefaultBudget, parallel});
      CHECK(agreement.positions_checked > 0);
      CHECK(agreement.disagreements.empty());
    }
  }
}
