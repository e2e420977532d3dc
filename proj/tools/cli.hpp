#pragma once

// Command-line front end: derive | solve | cooks | tournament.
// Exit codes: 0 success, 2 invalid input, 3 capability refusal.

#include <poisonduel/poisonduel.hpp>

#include "CLI11.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace poisonduel::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitRefused = 3;
inline constexpr const char* kOutDirEnv = "POISONDUEL_OUT_DIR";

struct RunConfig {
  std::string subcommand;
  int k = 2;
  std::optional<int> km;
  std::optional<int> kp;
  std::string prior = "canonical";  // canonical | all-orderings | path to a JSON prior
  std::optional<std::string> ordering;
  bool average_only = false;
  std::string strategies = "canonical";  // canonical | extended
  std::optional<std::string> game_path;
  std::size_t max_strategies = 8;
  bool canonical = true;
  std::optional<std::string> config_path;
  std::vector<std::string> bots;
  int rounds = 1000;
  std::optional<std::uint64_t> seed;
  bool self_play = false;
  std::string format = "json";  // json | csv | table | text
  std::optional<std::string> out;
  std::optional<std::string> out_dir;

  int magician_k() const { return km.value_or(k); }
  int physician_k() const { return kp.value_or(k); }
};

namespace detail {

inline io::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return io::json::parse(in);
  } catch (const io::json::parse_error& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

inline Prior resolve_prior(const std::string& mode, int km, int kp) {
  if (mode == "canonical") return Prior::canonical(km, kp);
  if (mode == "all-orderings") return Prior::all_orderings(km, kp);
  Prior p = io::prior_from_json(read_json_file(mode));
  if (p.counts() != std::pair{km, kp}) {
    throw InputError("prior file orderings do not match the requested poison counts");
  }
  return p;
}

inline std::vector<PureStrategy> strategy_set(const std::string& kind, int k) {
  if (kind == "canonical") return canonical_strategies(k);
  if (kind == "extended") return extended_strategies(k);
  throw InputError("unknown strategy set '" + kind + "' (expected canonical or extended)");
}

inline void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (!cfg.out) {
    out << text;
    return;
  }
  std::ofstream f(*cfg.out);
  if (!f) throw InputError("cannot write '" + *cfg.out + "'");
  f << text;
}

inline const char* kTableNote = "# table view (non-canonical; use --format json for exact output)\n";

inline std::string mix_text(const MixedStrategy& m, const std::vector<std::string>& labels) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!s.empty()) s += ", ";
    s += labels[i] + " " + m[i].str();
  }
  return s;
}

}  // namespace detail

struct DeriveOutput {
  std::map<Ordering, BimatrixGame> per_ordering;
  BimatrixGame average;
  Prior prior;
};

inline DeriveOutput derive_games(const RunConfig& cfg) {
  const int km = cfg.magician_k();
  const int kp = cfg.physician_k();
  if (km < 1 || kp < 1) throw InputError("--k must be at least 1");
  Prior prior = cfg.ordering ? Prior::point_mass(Ordering(*cfg.ordering)) : detail::resolve_prior(cfg.prior, km, kp);
  if (prior.counts() != std::pair{km, kp}) throw InputError("ordering does not match the requested poison counts");
  const auto rows = detail::strategy_set(cfg.strategies, km);
  const auto cols = detail::strategy_set(cfg.strategies, kp);
  std::map<Ordering, BimatrixGame> games;
  for (const auto& [o, w] : prior.weights()) games.emplace(o, derive_matrix(o, rows, cols));
  BimatrixGame avg = average(prior, games);
  return {std::move(games), std::move(avg), std::move(prior)};
}

inline int cmd_derive(const RunConfig& cfg, std::ostream& out) {
  const auto d = derive_games(cfg);
  const bool single = cfg.average_only || cfg.ordering.has_value();
  std::string text;
  if (cfg.format == "json") {
    if (single) {
      text = io::to_json(d.average).dump(2) + "\n";
    } else {
      io::json per = io::json::object();
      for (const auto& [o, g] : d.per_ordering) per[o.tags()] = io::to_json(g);
      io::json doc{{"k", {{"magician", cfg.magician_k()}, {"physician", cfg.physician_k()}}},
                   {"prior", io::to_json(d.prior)},
                   {"orderings", per},
                   {"average", io::to_json(d.average)}};
      text = doc.dump(2) + "\n";
    }
  } else if (cfg.format == "table") {
    text = detail::kTableNote;
    if (!single) {
      for (const auto& [o, g] : d.per_ordering) text += "\n== ordering " + o.tags() + " ==\n" + io::game_table(g);
      text += "\n== average ==\n";
    }
    text += io::game_table(d.average);
  } else if (cfg.format == "text") {
    text = io::to_two_matrix_text(d.average);
  } else {
    throw InputError("derive supports --format json, table or text");
  }
  detail::emit(cfg, text, out);
  return kExitOk;
}

inline io::json solve_json(const BimatrixGame& game, std::size_t max_strategies) {
  const auto result = support_enumeration(game, SupportEnumerationOptions{max_strategies});
  return io::solve_report(game, result, maximin(game, Player::Row), maximin(game, Player::Column));
}

inline int cmd_solve(const RunConfig& cfg, std::ostream& out) {
  const BimatrixGame game =
      cfg.game_path ? io::game_from_document(detail::read_json_file(*cfg.game_path)) : derive_games(cfg).average;
  const auto report = solve_json(game, cfg.max_strategies);
  std::string text;
  if (cfg.format == "json") {
    text = report.dump(2) + "\n";
  } else if (cfg.format == "table") {
    const auto result = support_enumeration(game, SupportEnumerationOptions{cfg.max_strategies});
    std::ostringstream os;
    os << detail::kTableNote << "equilibria: " << result.equilibria.size() << '\n';
    for (const auto& e : result.equilibria) {
      os << "  row [" << detail::mix_text(e.row_mix, game.row_labels) << "] vs column ["
         << detail::mix_text(e.col_mix, game.col_labels) << "]  values " << e.row_value.str() << ", "
         << e.col_value.str() << '\n';
    }
    if (result.degenerate()) {
      os << "degenerate support pairs (solution families): " << result.degenerate_families.size() << '\n';
    }
    for (Player p : {Player::Row, Player::Column}) {
      const auto m = maximin(game, p);
      os << "maximin " << to_string(p) << ": ["
         << detail::mix_text(m.strategy, p == Player::Row ? game.row_labels : game.col_labels) << "] guarantees "
         << m.guaranteed_value.str() << '\n';
    }
    text = os.str();
  } else {
    throw InputError("solve supports --format json or table");
  }
  detail::emit(cfg, text, out);
  return kExitOk;
}

inline int cmd_cooks(const RunConfig& cfg, std::ostream& out) {
  const auto report = enumerate_cooks(cfg.magician_k(), cfg.physician_k(), cfg.canonical);
  std::string text;
  if (cfg.format == "json") {
    text = io::to_json(report).dump(2) + "\n";
  } else if (cfg.format == "table") {
    std::ostringstream os;
    os << detail::kTableNote;
    auto line = [&](const CookGroup& g) {
      os << "  " << g.classes.str() << ":";
      for (const auto& o : g.orderings()) os << ' ' << o.tags();
      os << "  (" << g.scenarios.size() << " scenarios)\n";
    };
    os << "mutual poisonings:\n";
    for (const auto& g : report.groups) line(g);
    if (!report.excluded.empty()) {
      os << "excluded (A against C needs an A poison stronger than the C poison):\n";
      for (const auto& g : report.excluded) line(g);
    }
    text = os.str();
  } else {
    throw InputError("cooks supports --format json or table");
  }
  detail::emit(cfg, text, out);
  return kExitOk;
}

inline std::string roster_listing() {
  std::string s;
  for (const auto& b : bots::builtin_roster()) s += (s.empty() ? "" : ", ") + b.name;
  return s;
}

/// Fills tournament fields from a JSON config; explicit flags win.
inline void apply_tournament_config(RunConfig& cfg, const io::json& j, bool bots_set, bool rounds_set, bool k_set,
                                    bool seed_set, bool prior_set) {
  try {
    if (!bots_set && j.contains("bots")) cfg.bots = j.at("bots").get<std::vector<std::string>>();
    if (!rounds_set && j.contains("rounds")) cfg.rounds = j.at("rounds").get<int>();
    if (!k_set && j.contains("k")) cfg.k = j.at("k").get<int>();
    if (!seed_set && j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("self_play")) cfg.self_play = cfg.self_play || j.at("self_play").get<bool>();
    if (!prior_set && j.contains("prior")) {
      if (j.at("prior").is_string()) cfg.prior = j.at("prior").get<std::string>();
    }
  } catch (const io::json::exception& e) {
    throw InputError(std::string("malformed tournament config: ") + e.what());
  }
}

inline int cmd_tournament(const RunConfig& cfg, const std::optional<Prior>& inline_prior, std::ostream& out,
                          std::ostream& err) {
  if (!cfg.seed) throw InputError("tournament requires --seed (or \"seed\" in the config)");
  if (cfg.bots.size() < 2) throw InputError("tournament needs at least two bots; built-in roster: " + roster_listing());
  std::vector<BotSpec> roster;
  for (const auto& name : cfg.bots) {
    auto b = bots::find(name);
    if (!b) {
      err << "unknown bot '" << name << "'; built-in roster: " << roster_listing() << '\n';
      return kExitInvalidInput;
    }
    roster.push_back(std::move(*b));
  }
  const Prior prior = inline_prior ? *inline_prior : detail::resolve_prior(cfg.prior, cfg.k, cfg.k);
  const auto result = run_tournament(roster, cfg.rounds, cfg.k, *cfg.seed, prior, cfg.self_play);

  std::filesystem::path dir = cfg.out_dir.value_or(".");
  if (!cfg.out_dir) {
    if (const char* env = std::getenv(kOutDirEnv)) dir = env;
  }
  std::filesystem::create_directories(dir);
  {
    std::ofstream csv(dir / "records.csv");
    if (!csv) throw InputError("cannot write " + (dir / "records.csv").string());
    io::write_records_csv(csv, result.matches);
  }
  io::json matches = io::json::array();
  for (const auto& m : result.matches) matches.push_back({{"bot1", m.bot1}, {"bot2", m.bot2}, {"seed", m.seed}});
  io::json doc{{"rng", kRngAlgorithm},
               {"seed", *cfg.seed},
               {"k", cfg.k},
               {"rounds_per_pair", cfg.rounds},
               {"self_play", cfg.self_play},
               {"prior", io::to_json(prior)},
               {"matches", matches},
               {"standings", io::to_json(result.standings)}};
  {
    std::ofstream js(dir / "standings.json");
    if (!js) throw InputError("cannot write " + (dir / "standings.json").string());
    js << doc.dump(2) << '\n';
  }
  if (cfg.format == "table") {
    std::vector<std::string> names;
    RationalMatrix summary(result.standings.bots.size(), 5);
    for (std::size_t i = 0; i < result.standings.bots.size(); ++i) {
      const auto& b = result.standings.bots[i];
      names.push_back(b.name);
      summary(i, 0) = Rational(b.rounds_played);
      summary(i, 1) = Rational(b.wins);
      summary(i, 2) = Rational(b.mutual_deaths);
      summary(i, 3) = Rational(b.executions);
      summary(i, 4) = b.mean_payoff();
    }
    out << detail::kTableNote << io::table(names, {"rounds", "wins", "mutual", "executed", "mean"}, summary);
  } else {
    out << io::to_json(result.standings).dump(2) << '\n';
  }
  return kExitOk;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Poison duel: derive payoff games, solve them, census cooks, run tournaments"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_k = [&](CLI::App* sub) {
    sub->add_option("--k", cfg.k, "poisons per servant")->check(CLI::PositiveNumber);
    sub->add_option("--km", cfg.km, "Magician's poison count (overrides --k)")->check(CLI::PositiveNumber);
    sub->add_option("--kp", cfg.kp, "Physician's poison count (overrides --k)")->check(CLI::PositiveNumber);
  };
  auto add_game_flags = [&](CLI::App* sub) {
    add_k(sub);
    sub->add_option("--prior", cfg.prior, "canonical | all-orderings | path to a JSON prior");
    sub->add_option("--ordering", cfg.ordering, "point-mass prior on one ordering, e.g. MPMP");
    sub->add_option("--strategies", cfg.strategies, "canonical | extended");
  };
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "json | csv | table | text");
    sub->add_option("--out", cfg.out, "write to this file instead of stdout");
  };

  auto* derive = app.add_subcommand("derive", "payoff matrices per ordering and their prior average");
  add_game_flags(derive);
  derive->add_flag("--average", cfg.average_only, "emit only the averaged game");
  add_output(derive);

  auto* solve = app.add_subcommand("solve", "all Nash equilibria and maximin strategies");
  add_game_flags(solve);
  solve->add_option("--game", cfg.game_path, "game JSON (as written by derive)");
  solve->add_option("--max-strategies", cfg.max_strategies, "refuse games larger than this per player");
  add_output(solve);

  auto* cooks = app.add_subcommand("cooks", "strategy pairs where both servants die of poisoning");
  add_k(cooks);
  cooks->add_flag("--canonical,!--no-canonical", cfg.canonical, "canonical reduction (default on)");
  add_output(cooks);

  auto* tour = app.add_subcommand("tournament", "seeded round-robin between built-in bots");
  tour->add_option("--config", cfg.config_path, "tournament JSON config");
  auto* bots_opt = tour->add_option("--bots", cfg.bots, "bot names")->delimiter(',');
  auto* rounds_opt = tour->add_option("--rounds", cfg.rounds, "rounds per pair")->check(CLI::PositiveNumber);
  auto* k_opt = tour->add_option("--k", cfg.k, "poisons per servant")->check(CLI::PositiveNumber);
  auto* seed_opt = tour->add_option("--seed", cfg.seed, "RNG seed (required)");
  auto* prior_opt = tour->add_option("--prior", cfg.prior, "canonical | all-orderings | path to a JSON prior");
  tour->add_flag("--self-play", cfg.self_play, "also pair each bot with itself");
  tour->add_option("--out-dir", cfg.out_dir, std::string("directory for records.csv and standings.json (default $") +
                                                 kOutDirEnv + " or .)");
  tour->add_option("--format", cfg.format, "json | table (stdout summary)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalidInput;
  }

  try {
    if (*derive) return cmd_derive(cfg, out);
    if (*solve) return cmd_solve(cfg, out);
    if (*cooks) return cmd_cooks(cfg, out);
    if (*tour) {
      std::optional<Prior> inline_prior;
      if (cfg.config_path) {
        const auto j = detail::read_json_file(*cfg.config_path);
        apply_tournament_config(cfg, j, bots_opt->count() > 0, rounds_opt->count() > 0, k_opt->count() > 0,
                                seed_opt->count() > 0, prior_opt->count() > 0);
        if (prior_opt->count() == 0 && j.contains("prior") && j.at("prior").is_object()) {
          inline_prior = io::prior_from_json(j.at("prior"));
        }
      }
      return cmd_tournament(cfg, inline_prior, out, err);
    }
  } catch (const CapabilityError& e) {
    err << "refused: " << e.what() << '\n';
    return kExitRefused;
  } catch (const InputError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitInvalidInput;
  }
  return kExitInvalidInput;
}

}  // namespace poisonduel::cli
