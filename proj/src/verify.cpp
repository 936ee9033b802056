#include "chocbar/verify.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace chocbar {

namespace {

using ordered_json = nlohmann::ordered_json;

bool predicted_p(const SweepSpec& spec, const Position& p) {
  const ConjectureFamily& fam = spec.family;
  if (fam.statement() == Statement::kConjectureEven &&
      (p.x > fam.bound() || p.z > fam.bound())) {
    return nim_sum({p.x, p.y, p.z}) == 0;
  }
  return predict(fam, p).is_p;
}

// Inclusive y range swept above column (x,z); empty when lo > hi.
std::pair<Coord, Coord> y_range(const SweepSpec& spec, Coord fxz) {
  const Coord y_top = *spec.y_max;
  switch (spec.region) {
    case RegionPolicy::kValidOnly: return {0, std::min(fxz, y_top)};
    case RegionPolicy::kAll: return {0, y_top};
    case RegionPolicy::kOutOfRegionOnly: return {fxz + 1, y_top};
  }
  return {1, 0};
}

template <typename Visit>
void for_each_swept(const SweepSpec& spec, const HeightFunction& f, Coord x, Visit&& visit) {
  for (Coord z = 0; z <= spec.z_max; ++z) {
    const auto [lo, hi] = y_range(spec, f(x, z));
    for (Coord y = lo; y <= hi && lo <= hi; ++y) visit(Position{x, y, z});
  }
}

void check_sweep_budget(const SweepSpec& spec, const SweepOptions& options) {
  const std::uint64_t states = sweep_box(spec).volume();
  if (states > options.budget) throw ResourceLimit(options.budget, states);
}

ordered_json spec_to_json(const SweepSpec& spec) {
  ordered_json j;
  j["statement"] = std::string(to_string(spec.family.statement()));
  j["k"] = spec.family.k();
  if (spec.family.statement() == Statement::kConjectureEven) {
    j["a"] = spec.family.params().a();
  } else {
    j["a"] = nullptr;
  }
  j["m"] = spec.family.params().m();
  j["x_max"] = spec.x_max;
  j["z_max"] = spec.z_max;
  if (spec.y_max) {
    j["y_max"] = *spec.y_max;
  } else {
    j["y_max"] = nullptr;
  }
  j["region"] = std::string(to_string(spec.region));
  j["beyond_bound"] = spec.beyond_bound;
  j["conjectural"] = spec.family.conjectural();
  return j;
}

SweepSpec spec_from_json(const ordered_json& j) {
  SweepSpec spec;
  spec.family = ConjectureFamily::for_statement(
      parse_statement(j.at("statement").get<std::string>()), j.at("k").get<Coord>());
  spec.x_max = j.at("x_max").get<Coord>();
  spec.z_max = j.at("z_max").get<Coord>();
  if (!j.at("y_max").is_null()) spec.y_max = j.at("y_max").get<Coord>();
  spec.region = parse_region_policy(j.at("region").get<std::string>());
  spec.beyond_bound = j.at("beyond_bound").get<bool>();
  return spec;
}

}  // namespace

std::string_view to_string(RegionPolicy p) {
  switch (p) {
    case RegionPolicy::kValidOnly: return "valid-region";
    case RegionPolicy::kAll: return "all";
    case RegionPolicy::kOutOfRegionOnly: return "out-of-region";
  }
  return "?";
}

RegionPolicy parse_region_policy(std::string_view text) {
  if (text == "valid-region" || text == "valid") return RegionPolicy::kValidOnly;
  if (text == "all") return RegionPolicy::kAll;
  if (text == "out-of-region") return RegionPolicy::kOutOfRegionOnly;
  throw InvalidArgument("unknown region policy '" + std::string(text) + "'");
}

SweepSpec normalize(const SweepSpec& in) {
  SweepSpec spec = in;
  check_position({spec.x_max, 0, spec.z_max});
  if (spec.family.statement() == Statement::kConjectureEven && !spec.beyond_bound) {
    spec.x_max = std::min(spec.x_max, spec.family.bound());
    spec.z_max = std::min(spec.z_max, spec.family.bound());
  }
  const FloorSlope f(spec.family.params());
  const Coord f_top = f(spec.x_max, spec.z_max);
  if (!spec.y_max) {
    spec.y_max = spec.region == RegionPolicy::kValidOnly ? f_top : f_top + spec.family.k();
  }
  check_position({0, *spec.y_max, 0});
  return spec;
}

Box sweep_box(const SweepSpec& in) {
  const SweepSpec spec = normalize(in);
  const FloorSlope f(spec.family.params());
  Coord y_top = *spec.y_max;
  if (spec.region == RegionPolicy::kValidOnly) {
    y_top = std::min(y_top, f(spec.x_max, spec.z_max));
  }
  return {spec.x_max, y_top, spec.z_max};
}

VerificationReport sweep(const SweepSpec& in, const SweepOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const SweepSpec spec = normalize(in);
  check_sweep_budget(spec, options);
  const FloorSlope f(spec.family.params());
  const OutcomeTable oracle = outcome_table(f, sweep_box(spec));

  VerificationReport report;
  report.spec = spec;
  std::uint64_t checked = 0;
  std::vector<Mismatch> found;
  const auto x_count = static_cast<std::int64_t>(spec.x_max) + 1;

#pragma omp parallel if (options.parallel)
  {
    std::vector<Mismatch> local;
    std::uint64_t local_checked = 0;
#pragma omp for schedule(dynamic, 1) nowait
    for (std::int64_t xi = 0; xi < x_count; ++xi) {
      for_each_swept(spec, f, static_cast<Coord>(xi), [&](const Position& p) {
        ++local_checked;
        const bool predicted = predicted_p(spec, p);
        const bool actual = oracle.is_p(p);
        if (predicted != actual) {
          local.push_back({p, predicted ? Outcome::kP : Outcome::kN,
                           actual ? Outcome::kP : Outcome::kN});
        }
      });
    }
#pragma omp critical(chocbar_sweep_merge)
    {
      checked += local_checked;
      found.insert(found.end(), local.begin(), local.end());
    }
  }

  std::sort(found.begin(), found.end(),
            [](const Mismatch& a, const Mismatch& b) { return a.position < b.position; });
  report.positions_checked = checked;
  report.mismatches = std::move(found);
  report.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  return report;
}

OracleAgreement check_oracles(const SweepSpec& in, const SweepOptions& options) {
  const SweepSpec spec = normalize(in);
  check_sweep_budget(spec, options);
  const FloorSlope f(spec.family.params());
  const Box box = sweep_box(spec);
  const OutcomeTable boolean_route = outcome_table(f, box);
  const GrundyTable grundy_route =
      options.parallel ? grundy_table_parallel(f, box) : grundy_table_serial(f, box);

  OracleAgreement out;
  for (Coord x = 0; x <= spec.x_max; ++x) {
    for_each_swept(spec, f, x, [&](const Position& p) {
      ++out.positions_checked;
      if ((grundy_route.at(p) == 0) != boolean_route.is_p(p)) out.disagreements.push_back(p);
    });
  }
  return out;
}

std::string export_report(const VerificationReport& report, std::string_view format) {
  if (format == "json") {
    ordered_json j;
    j["spec"] = spec_to_json(report.spec);
    j["positions_checked"] = report.positions_checked;
    j["mismatches"] = ordered_json::array();
    for (const Mismatch& m : report.mismatches) {
      ordered_json row;
      row["x"] = m.position.x;
      row["y"] = m.position.y;
      row["z"] = m.position.z;
      row["predicted"] = std::string(to_string(m.predicted));
      row["oracle"] = std::string(to_string(m.oracle));
      j["mismatches"].push_back(std::move(row));
    }
    j["elapsed_ms"] = report.elapsed_ms;
    j["version"] = report.version;
    return j.dump(2) + "\n";
  }
  if (format == "csv") {
    std::ostringstream out;
    out << "x,y,z,predicted,oracle\n";
    for (const Mismatch& m : report.mismatches) {
      out << m.position.x << ',' << m.position.y << ',' << m.position.z << ','
          << to_string(m.predicted) << ',' << to_string(m.oracle) << '\n';
    }
    return out.str();
  }
  throw InvalidArgument("unsupported report format '" + std::string(format) + "'");
}

VerificationReport parse_report_json(std::string_view text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
    VerificationReport report;
    report.spec = spec_from_json(j.at("spec"));
    report.positions_checked = j.at("positions_checked").get<std::uint64_t>();
    for (const auto& row : j.at("mismatches")) {
      report.mismatches.push_back(
          {{row.at("x").get<Coord>(), row.at("y").get<Coord>(), row.at("z").get<Coord>()},
           parse_outcome(row.at("predicted").get<std::string>()),
           parse_outcome(row.at("oracle").get<std::string>())});
    }
    report.elapsed_ms = j.at("elapsed_ms").get<std::int64_t>();
    report.version = j.at("version").get<std::string>();
    return report;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed report: ") + e.what());
  }
}

}  // namespace chocbar
