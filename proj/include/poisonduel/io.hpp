#pragma once

// Serialization: JSON documents with exact "p/q" rationals, CSV match
// records, the two-matrix text layout read by lrsnash-style solvers, and
// a fixed-width table view with row and column labels.

#include <poisonduel/cooks.hpp>
#include <poisonduel/equilibrium.hpp>
#include <poisonduel/tournament.hpp>

#include <nlohmann/json.hpp>

#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace poisonduel::io {

using nlohmann::json;

inline Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(Integer(j.get<long long>()));
  throw InputError("expected a rational as a \"p/q\" string or an integer, got " + j.dump());
}

inline json to_json(const RationalVector& v) {
  json out = json::array();
  for (const auto& r : v) out.push_back(to_pq(r));
  return out;
}

inline json to_json(const RationalMatrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_pq(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

inline RationalMatrix matrix_from_json(const json& j) {
  if (!j.is_array()) throw InputError("payoff matrix must be an array of rows");
  std::vector<RationalVector> rows;
  for (const auto& row : j) {
    if (!row.is_array()) throw InputError("payoff matrix rows must be arrays");
    RationalVector r;
    for (const auto& cell : row) r.push_back(rational_from_json(cell));
    rows.push_back(std::move(r));
  }
  return RationalMatrix::from_rows(rows);
}

inline json to_json(const BimatrixGame& g) {
  return json{{"row_labels", g.row_labels},
              {"col_labels", g.col_labels},
              {"row_payoffs", to_json(g.row_payoffs)},
              {"col_payoffs", to_json(g.col_payoffs)}};
}

inline BimatrixGame game_from_json(const json& j) {
  try {
    return BimatrixGame(j.at("row_labels").get<std::vector<std::string>>(),
                        j.at("col_labels").get<std::vector<std::string>>(), matrix_from_json(j.at("row_payoffs")),
                        matrix_from_json(j.at("col_payoffs")));
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed game JSON: ") + e.what());
  }
}

/// Accepts a bare game object, or a derive document (uses its "average").
inline BimatrixGame game_from_document(const json& j) {
  if (j.contains("row_payoffs")) return game_from_json(j);
  if (j.contains("average")) return game_from_json(j.at("average"));
  throw InputError("document holds neither a game nor an averaged game");
}

inline json to_json(const Prior& p) {
  json out = json::object();
  for (const auto& [o, w] : p.weights()) out[o.tags()] = to_pq(w);
  return out;
}

/// {"MPMP": "1/2", "PMPM": "1/2"}, optionally wrapped as {"weights": {...}}.
inline Prior prior_from_json(const json& j) {
  const json& w = j.contains("weights") ? j.at("weights") : j;
  if (!w.is_object() || w.empty()) throw InputError("prior must be a non-empty object of ordering -> weight");
  std::map<Ordering, Rational> weights;
  for (const auto& [tags, value] : w.items()) weights[Ordering(tags)] = rational_from_json(value);
  return Prior(std::move(weights));
}

inline json to_json(const MixedStrategy& m) { return to_json(m.probs()); }

inline json to_json(const NashEquilibrium& e) {
  return json{{"row_mix", to_json(e.row_mix)},
              {"col_mix", to_json(e.col_mix)},
              {"row_value", to_pq(e.row_value)},
              {"col_value", to_pq(e.col_value)}};
}

inline json to_json(const FamilyVertex& v) {
  return json{{"mix", to_json(v.mix)}, {"induced_value", to_pq(v.induced_value)}};
}

inline json to_json(const DegenerateFamily& f) {
  json rows = json::array(), cols = json::array();
  for (const auto& v : f.row_vertices) rows.push_back(to_json(v));
  for (const auto& v : f.col_vertices) cols.push_back(to_json(v));
  return json{{"row_support", f.row_support},
              {"col_support", f.col_support},
              {"row_vertices", rows},
              {"col_vertices", cols}};
}

inline json to_json(const MaximinResult& m) {
  return json{{"strategy", to_json(m.strategy)}, {"value", to_pq(m.guaranteed_value)}};
}

inline json solve_report(const BimatrixGame& g, const SupportEnumerationResult& r, const MaximinResult& row_mm,
                         const MaximinResult& col_mm) {
  json eqs = json::array(), fams = json::array();
  for (const auto& e : r.equilibria) eqs.push_back(to_json(e));
  for (const auto& f : r.degenerate_families) fams.push_back(to_json(f));
  return json{{"row_labels", g.row_labels},
              {"col_labels", g.col_labels},
              {"equilibria", eqs},
              {"degenerate", r.degenerate()},
              {"degenerate_families", fams},
              {"maximin", {{"row", to_json(row_mm)}, {"column", to_json(col_mm)}}}};
}

inline json to_json(const CookReport& r) {
  auto group_json = [](const CookGroup& g) {
    json sc = json::array();
    for (const auto& s : g.scenarios) {
      sc.push_back({{"ordering", s.ordering.tags()}, {"magician", s.magician_label}, {"physician", s.physician_label}});
    }
    json worlds = json::array();
    for (const auto& o : g.orderings()) worlds.push_back(o.tags());
    return json{{"classes", g.classes.str()}, {"orderings", worlds}, {"scenarios", sc}};
  };
  json worlds = json::array(), groups = json::array(), excluded = json::array();
  for (const auto& o : r.worlds) worlds.push_back(o.tags());
  for (const auto& g : r.groups) groups.push_back(group_json(g));
  for (const auto& g : r.excluded) excluded.push_back(group_json(g));
  return json{{"k", {{"magician", r.km}, {"physician", r.kp}}},
              {"canonical", r.canonical},
              {"worlds", worlds},
              {"groups", groups},
              {"excluded", excluded}};
}

inline json to_json(const Standings& s) {
  json bots = json::array();
  for (const auto& b : s.bots) {
    bots.push_back({{"name", b.name},
                    {"rounds_played", b.rounds_played},
                    {"wins", b.wins},
                    {"losses", b.losses},
                    {"mutual_deaths", b.mutual_deaths},
                    {"executions", b.executions},
                    {"faults", b.faults},
                    {"opponent_faults", b.opponent_faults},
                    {"total_payoff", to_pq(b.total_payoff)},
                    {"mean_payoff", to_pq(b.mean_payoff())}});
  }
  return bots;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline void write_records_csv(std::ostream& os, const std::vector<MatchResult>& matches) {
  os << "match,bot1,bot2,round,ordering,strategy1,class1,strategy2,class2,outcome1,outcome2,payoff1,payoff2,"
        "fault1,fault2\n";
  for (std::size_t m = 0; m < matches.size(); ++m) {
    for (const auto& r : matches[m].records) {
      os << m << ',' << csv_field(matches[m].bot1) << ',' << csv_field(matches[m].bot2) << ',' << r.round << ','
         << r.ordering.tags() << ',' << csv_field(r.label1) << ','
         << (r.strategy1 ? to_string(classify(*r.strategy1)) : "") << ',' << csv_field(r.label2) << ','
         << (r.strategy2 ? to_string(classify(*r.strategy2)) : "") << ','
         << (r.outcome ? to_string(r.outcome->magician) : "") << ','
         << (r.outcome ? to_string(r.outcome->physician) : "") << ',' << to_pq(r.payoffs.magician) << ','
         << to_pq(r.payoffs.physician) << ',' << csv_field(r.fault1) << ',' << csv_field(r.fault2) << '\n';
    }
  }
}

/// "m n", blank line, row player's matrix, blank line, column player's
/// matrix; entries as reduced fractions. This is the lrsnash input layout.
inline std::string to_two_matrix_text(const BimatrixGame& g) {
  std::ostringstream os;
  auto str = [](const Rational& r) {
    return boost::multiprecision::denominator(r) == 1 ? boost::multiprecision::numerator(r).str() : r.str();
  };
  os << g.rows() << ' ' << g.cols() << "\n\n";
  for (const auto* m : {&g.row_payoffs, &g.col_payoffs}) {
    for (std::size_t i = 0; i < m->rows(); ++i) {
      for (std::size_t j = 0; j < m->cols(); ++j) os << (j ? " " : "") << str((*m)(i, j));
      os << '\n';
    }
    if (m == &g.row_payoffs) os << '\n';
  }
  return os.str();
}

/// Fixed-width matrix with row and column labels.
inline std::string table(const std::vector<std::string>& rows, const std::vector<std::string>& cols,
                         const RationalMatrix& m) {
  auto cell = [](const Rational& r) {
    return boost::multiprecision::denominator(r) == 1 ? boost::multiprecision::numerator(r).str() : r.str();
  };
  std::size_t label_w = 1, w = 1;
  for (const auto& r : rows) label_w = std::max(label_w, r.size());
  for (const auto& c : cols) w = std::max(w, c.size());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) w = std::max(w, cell(m(i, j)).size());

  std::ostringstream os;
  os << std::string(label_w, ' ') << " |";
  for (const auto& c : cols) os << ' ' << std::setw(static_cast<int>(w)) << c;
  os << '\n' << std::string(label_w + 1, '-') << '+' << std::string(cols.size() * (w + 1), '-') << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << std::setw(static_cast<int>(label_w)) << rows[i] << " |";
    for (std::size_t j = 0; j < m.cols(); ++j) os << ' ' << std::setw(static_cast<int>(w)) << cell(m(i, j));
    os << '\n';
  }
  return os.str();
}

inline std::string game_table(const BimatrixGame& g) {
  return "Magician payoffs (rows: Magician, columns: Physician)\n" +
         table(g.row_labels, g.col_labels, g.row_payoffs) +
         "\nPhysician payoffs (rows: Magician, columns: Physician)\n" +
         table(g.row_labels, g.col_labels, g.col_payoffs);
}

}  // namespace poisonduel::io
