#include "chocbar/cli.hpp"

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "chocbar/http_server.hpp"
#include "chocbar/service.hpp"
#include "chocbar/solver.hpp"
#include "chocbar/theory.hpp"
#include "chocbar/verify.hpp"

namespace chocbar {

namespace {

using nlohmann::ordered_json;

struct Flags {
  Coord k = 0;
  std::string pos;
  std::string format = "text";
  std::optional<std::uint64_t> budget;
  bool grundy = false;

  // verify
  std::optional<Coord> a;
  std::optional<Coord> m;
  Coord max_x = 0;
  Coord max_z = 0;
  std::optional<Coord> y_max;
  std::string region = "valid-region";
  bool beyond_bound = false;
  bool serial = false;

  // serve
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string static_dir;
};

std::uint64_t effective_budget(const Flags& flags) {
  return flags.budget ? *flags.budget : budget_from_env();
}

Solver make_solver(const Flags& flags) {
  return Solver(std::make_shared<FloorSlope>(SlopeParams::plain(flags.k)),
                SolverOptions{effective_budget(flags)});
}

void require_format(const Flags& flags, bool allow_csv) {
  if (flags.format == "text" || flags.format == "json") return;
  if (allow_csv && flags.format == "csv") return;
  throw InvalidArgument("unsupported --format '" + flags.format + "'");
}

ordered_json moves_json(const std::vector<Move>& list) {
  ordered_json arr = ordered_json::array();
  for (const Move& m : list) arr.push_back(GameService::to_json(m));
  return arr;
}

int cmd_grundy(const Flags& flags, std::ostream& out) {
  require_format(flags, false);
  const Position pos = parse_position(flags.pos);
  Solver solver = make_solver(flags);
  const std::uint32_t g = solver.grundy(pos);
  if (flags.format == "json") {
    ordered_json j;
    j["k"] = flags.k;
    j["position"] = GameService::to_json(pos);
    j["grundy"] = g;
    out << j.dump() << "\n";
  } else {
    out << g << "\n";
  }
  return 0;
}

int cmd_classify(const Flags& flags, std::ostream& out) {
  require_format(flags, false);
  const Position pos = parse_position(flags.pos);
  Solver solver = make_solver(flags);
  const Outcome o = solver.classify(pos);
  const bool region = in_valid_region(solver.height(), pos);
  const std::vector<Move> winners = solver.winning_moves(pos);
  std::optional<std::uint32_t> g;
  if (flags.grundy) g = solver.grundy(pos);
  if (flags.format == "json") {
    ordered_json j;
    j["k"] = flags.k;
    j["position"] = GameService::to_json(pos);
    j["class"] = std::string(to_string(o));
    j["in_valid_region"] = region;
    j["winning_moves"] = moves_json(winners);
    if (g) j["grundy"] = *g;
    out << j.dump() << "\n";
  } else {
    out << to_string(o) << "\n";
    if (g) out << "grundy " << *g << "\n";
    out << "region " << (region ? "valid" : "outside") << "\n";
    out << "winning-moves " << winners.size() << "\n";
    for (const Move& m : winners) out << "win " << to_string(m) << "\n";
  }
  return 0;
}

int cmd_moves(const Flags& flags, std::ostream& out) {
  require_format(flags, false);
  const Position pos = parse_position(flags.pos);
  Solver solver = make_solver(flags);
  const std::vector<Move> all = moves(solver.height(), pos);
  if (flags.format == "json") {
    ordered_json j;
    j["k"] = flags.k;
    j["position"] = GameService::to_json(pos);
    j["moves"] = ordered_json::array();
    for (const Move& m : all) {
      ordered_json row = GameService::to_json(m);
      row["result_class"] = std::string(to_string(solver.classify(m.result)));
      j["moves"].push_back(std::move(row));
    }
    out << j.dump() << "\n";
  } else {
    for (const Move& m : all) out << to_string(m) << " " << to_string(solver.classify(m.result)) << "\n";
  }
  return 0;
}

int cmd_best_move(const Flags& flags, std::ostream& out) {
  require_format(flags, false);
  const Position pos = parse_position(flags.pos);
  Solver solver = make_solver(flags);
  const Move m = solver.engine_move(pos);
  const bool winning = solver.classify(m.result) == Outcome::kP;
  if (flags.format == "json") {
    ordered_json j;
    j["k"] = flags.k;
    j["position"] = GameService::to_json(pos);
    j["move"] = GameService::to_json(m);
    j["winning"] = winning;
    out << j.dump() << "\n";
  } else {
    out << to_string(m) << "\n";
    out << (winning ? "winning" : "fallback") << "\n";
  }
  return 0;
}

int cmd_s_relation(const Flags& flags, std::ostream& out) {
  require_format(flags, false);
  const Position pos = parse_position(flags.pos);
  const SRelation rel = s_relation(flags.k, pos);
  if (flags.format == "json") {
    ordered_json j;
    j["k"] = flags.k;
    j["position"] = GameService::to_json(pos);
    j["relation"] = std::string(to_string(rel.tag));
    j["s_n"] = wide_to_string(rel.s_n);
    out << j.dump() << "\n";
  } else {
    out << to_string(rel.tag) << " " << wide_to_string(rel.s_n) << "\n";
  }
  return 0;
}

int cmd_verify(Statement statement, const Flags& flags, std::ostream& out) {
  require_format(flags, true);
  SweepSpec spec;
  if (statement == Statement::kConjectureEven && (flags.a || flags.m)) {
    if (!flags.a || !flags.m) throw InvalidArgument("conj-even needs both --a and --m");
    spec.family = ConjectureFamily::even(*flags.a, *flags.m);
    if (flags.k != 0 && flags.k != spec.family.k()) {
      throw FamilyMismatch("--k " + std::to_string(flags.k) + " disagrees with --a/--m (k=" +
                           std::to_string(spec.family.k()) + ")");
    }
  } else {
    if (flags.k == 0) throw InvalidArgument("--k is required");
    spec.family = ConjectureFamily::for_statement(statement, flags.k);
  }
  spec.x_max = flags.max_x;
  spec.z_max = flags.max_z;
  spec.y_max = flags.y_max;
  spec.region = parse_region_policy(flags.region);
  spec.beyond_bound = flags.beyond_bound;

  const VerificationReport report =
      sweep(spec, SweepOptions{effective_budget(flags), !flags.serial});
  if (flags.format == "text") {
    out << "statement " << to_string(report.spec.family.statement()) << "\n";
    out << "family " << report.spec.family.describe() << "\n";
    out << "positions-checked " << report.positions_checked << "\n";
    out << "mismatches " << report.mismatches.size() << "\n";
    for (const Mismatch& mm : report.mismatches) {
      out << "mismatch " << to_string(mm.position) << " predicted=" << to_string(mm.predicted)
          << " oracle=" << to_string(mm.oracle) << "\n";
    }
    out << "elapsed-ms " << report.elapsed_ms << "\n";
  } else {
    out << export_report(report, flags.format);
  }
  return report.mismatches.empty() ? 0 : 2;
}

int cmd_serve(const Flags& flags, std::ostream& out) {
  GameService service(ServiceOptions{effective_budget(flags)});
  HttpServer server(service, HttpOptions{flags.static_dir});
  out << "listening on http://" << flags.host << ":" << flags.port << std::endl;
  if (!server.listen(flags.host, flags.port)) {
    throw InvalidArgument("cannot listen on " + flags.host + ":" + std::to_string(flags.port));
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Flags flags;
  CLI::App app{"Perfect play and verification for three-dimensional chocolate-bar games"};
  app.require_subcommand(1);
  app.add_option("--budget", flags.budget, "Solver state budget (overrides CHOCBAR_BUDGET)");

  auto add_analysis = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--k", flags.k, "Divisor k of f(x,z) = floor((x+z)/k)")->required();
    sub->add_option("--pos", flags.pos, "Position x,y,z")->required();
    sub->add_option("--format", flags.format, "text | json");
    sub->add_option("--budget", flags.budget, "Solver state budget");
    return sub;
  };
  CLI::App* grundy_cmd = add_analysis("grundy", "Grundy number of a position");
  CLI::App* classify_cmd = add_analysis("classify", "P/N class, region flag and winning moves");
  classify_cmd->add_flag("--grundy", flags.grundy, "Also print the Grundy number");
  CLI::App* moves_cmd = add_analysis("moves", "All legal cuts with the class of each result");
  CLI::App* best_cmd = add_analysis("best-move", "The engine's chosen cut");
  CLI::App* srel_cmd = add_analysis("s-relation", "Compare y with f(x,z) through S_n");

  CLI::App* verify_cmd = app.add_subcommand("verify", "Sweep a closed form against the oracle");
  verify_cmd->require_subcommand(1);
  std::optional<Statement> statement;
  for (const char* name : {"theorem", "conj-4m1", "conj-even"}) {
    CLI::App* sub = verify_cmd->add_subcommand(name, std::string("Verify ") + name);
    sub->add_option("--k", flags.k, "Divisor k");
    if (std::string(name) == "conj-even") {
      sub->add_option("--a", flags.a, "Exponent a of k = 2^(a+2) m + 2^(a+1)");
      sub->add_option("--m", flags.m, "Multiplier m");
      sub->add_flag("--beyond-bound", flags.beyond_bound, "Sweep past the x,z bound");
    }
    sub->add_option("--max-x", flags.max_x, "Largest x swept")->required();
    sub->add_option("--max-z", flags.max_z, "Largest z swept")->required();
    sub->add_option("--y-max", flags.y_max, "Top of y for all / out-of-region sweeps");
    sub->add_option("--region", flags.region, "valid-region | all | out-of-region");
    sub->add_option("--format", flags.format, "text | json | csv");
    sub->add_option("--budget", flags.budget, "Solver state budget");
    sub->add_flag("--serial", flags.serial, "Disable the parallel comparison loop");
    sub->callback([&statement, name] { statement = parse_statement(name); });
  }

  CLI::App* serve_cmd = app.add_subcommand("serve", "Run the HTTP play service");
  serve_cmd->add_option("--host", flags.host, "Bind address");
  serve_cmd->add_option("--port", flags.port, "TCP port");
  serve_cmd->add_option("--static-dir", flags.static_dir, "Directory served under /");
  serve_cmd->add_option("--budget", flags.budget, "Solver state budget");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (grundy_cmd->parsed()) return cmd_grundy(flags, out);
    if (classify_cmd->parsed()) return cmd_classify(flags, out);
    if (moves_cmd->parsed()) return cmd_moves(flags, out);
    if (best_cmd->parsed()) return cmd_best_move(flags, out);
    if (srel_cmd->parsed()) return cmd_s_relation(flags, out);
    if (verify_cmd->parsed() && statement) return cmd_verify(*statement, flags, out);
    if (serve_cmd->parsed()) return cmd_serve(flags, out);
  } catch (const Error& e) {
    err << "error: " << e.code() << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "error: no command given\n";
  return 1;
}

}  // namespace chocbar
