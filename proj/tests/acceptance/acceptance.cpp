// Acceptance run: one PASS/FAIL line per criterion with its wall time.

#include <poisonduel/poisonduel.hpp>

#include "reference_games.hpp"
#include "grid_oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>

using namespace poisonduel;

namespace {

using Check = std::function<std::string()>;  // empty string means pass

int failures = 0;

void criterion(int id, const char* name, double budget_s, const Check& check) {
  const auto t0 = std::chrono::steady_clock::now();
  std::string why;
  try {
    why = check();
  } catch (const std::exception& e) {
    why = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (why.empty() && secs >= budget_s) why = "took longer than " + std::to_string(budget_s) + " s";
  std::printf("%s  %2d  %-34s %8.3f s (limit %g s)%s%s\n", why.empty() ? "PASS" : "FAIL", id, name, secs, budget_s,
              why.empty() ? "" : "  ", why.c_str());
  std::fflush(stdout);
  if (!why.empty()) ++failures;
}

MixedStrategy mix(std::initializer_list<Rational> p) { return MixedStrategy(RationalVector(p)); }

const Rational q(1, 4), h(1, 2);

std::string lead_games() {
  for (const char* o : {"MPMP", "MPPM"}) {
    if (derive_matrix(Ordering(o)) != testing::magician_lead_game()) return std::string(o) + " differs";
  }
  return {};
}

std::string swapped_lead_games() {
  for (const char* o : {"PMPM", "PMMP"}) {
    if (derive_matrix(Ordering(o)) != testing::physician_lead_game()) return std::string(o) + " differs";
  }
  if (testing::magician_lead_game().swapped() != testing::physician_lead_game()) return "tables are not swap-transposes";
  if (derive_matrix(Ordering("MPMP")).swapped() != derive_matrix(Ordering("PMPM"))) return "derived swap fails";
  return {};
}

std::string averaged_game() {
  const auto prior = Prior::canonical(2, 2);
  if (prior.weights().size() != 4) return "expected four admissible orderings";
  const auto g = expected_game(prior);
  if (g != testing::average_game()) return "average differs from the reference table";
  int halves = 0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) halves += (g.row_payoffs(i, j) == h) + (g.col_payoffs(i, j) == h);
  if (halves != 4) return "expected four 1/2 entries, found " + std::to_string(halves);
  return {};
}

std::string equilibria() {
  const auto g = testing::average_game();
  const auto r = support_enumeration(g);
  if (r.degenerate()) return "averaged game reported as degenerate";
  if (r.equilibria.size() != 3) return "found " + std::to_string(r.equilibria.size()) + " equilibria";
  const auto uni = mix({q, q, q, q});
  const auto bc = mix({0, h, h, 0});
  const auto ad = mix({Rational(1, 3), 0, 0, Rational(2, 3)});
  const std::vector<NashEquilibrium> expect{
      {ad, bc, h, Rational(1, 3)}, {bc, ad, Rational(1, 3), h}, {uni, uni, q, q}};
  for (const auto& e : expect) {
    const bool found = std::any_of(r.equilibria.begin(), r.equilibria.end(), [&](const NashEquilibrium& x) {
      return x.row_mix == e.row_mix && x.col_mix == e.col_mix && x.row_value == e.row_value &&
             x.col_value == e.col_value;
    });
    if (!found) return "missing equilibrium with values " + to_pq(e.row_value) + ", " + to_pq(e.col_value);
  }
  for (const auto& e : r.equilibria) {
    if (!verify_equilibrium(g, e)) return "returned equilibrium fails verification";
  }
  return {};
}

std::string maximin_check() {
  const auto g = testing::average_game();
  const auto target = mix({0, q, h, q});
  for (Player p : {Player::Row, Player::Column}) {
    const auto m = maximin(g, p);
    if (m.guaranteed_value != q) return to_string(p) + " guarantees " + to_pq(m.guaranteed_value);
    if (!(m.strategy == target)) return to_string(p) + " maximin mix differs";
    if (security_level(g, p, target) != q) return "security level of the mix is not 1/4";
    // Upper bound: against the uniform opponent mix no pure strategy earns
    // more than 1/4, so no mixed strategy can guarantee more.
    const auto br = best_response(g, p, mix({q, q, q, q}));
    if (br.value != q) return "dual certificate fails: best reply to uniform earns " + to_pq(br.value);
  }
  return {};
}

std::string deviation() {
  const auto g = testing::average_game();
  for (Player p : {Player::Row, Player::Column}) {
    const auto m = maximin(g, p);
    const Player other = p == Player::Row ? Player::Column : Player::Row;
    const auto br = best_response(g, other, m.strategy);
    if (br.value != h) return "best reply earns " + to_pq(br.value);
    if (br.argmax != std::vector<std::size_t>{0}) return "best reply is not uniquely A";
  }
  return {};
}

std::string cook_census() {
  const auto report = enumerate_cooks(2, 2, true);
  const auto admissible = enumerate_orderings(2, 2, true);
  const std::set<Ordering> all(admissible.begin(), admissible.end());
  // Independent census straight from the duel rules.
  std::map<std::string, std::set<Ordering>> brute;
  const auto strategies = canonical_strategies(2);
  for (const auto& o : admissible) {
    for (const auto& a : strategies)
      for (const auto& b : strategies)
        if (run_duel(o.world(), a, b).mutual_poisoning()) brute[ClassPair::of(classify(a), classify(b)).str()].insert(o);
  }
  std::map<std::string, std::set<Ordering>> reported;
  for (const auto& g : report.groups) {
    const auto os = g.orderings();
    reported[g.classes.str()] = std::set<Ordering>(os.begin(), os.end());
  }
  if (reported != brute) return "census disagrees with direct duel evaluation";
  const std::vector<std::string> names{"{A,A}", "{B,C}", "{C,D}", "{D,D}"};
  for (const auto& n : names) {
    if (!reported.count(n)) return "missing class " + n;
    if (n != "{C,D}" && reported[n] != all) return n + " is not present in every world";
  }
  if (reported.size() != names.size()) return "unexpected extra classes";
  // {C,D}: each scenario has the D player's poisons bracketing the C poison,
  // and every bracketing arrangement produces a scenario.
  std::set<std::pair<Ordering, Role>> seen;
  for (const auto& g : report.groups) {
    if (g.classes.str() != "{C,D}") continue;
    for (const auto& s : g.scenarios) {
      const Role c_role = classify(s.magician) == StrategyClass::C ? Role::Magician : Role::Physician;
      const auto& c_strategy = c_role == Role::Magician ? s.magician : s.physician;
      const auto& d_strategy = c_role == Role::Magician ? s.physician : s.magician;
      const auto w = s.ordering.world();
      const int c = w.strengths(c_role)[c_strategy.brings()->index - 1].rank;
      const auto& ds = w.strengths(opponent(c_role));
      const int lo = ds[d_strategy.pre_drink()->index - 1].rank, hi = ds[d_strategy.brings()->index - 1].rank;
      if (!(lo < c && c < hi)) return "{C,D} scenario without bracketing in " + s.ordering.tags();
      seen.insert({s.ordering, c_role});
    }
  }
  for (const auto& o : admissible) {
    for (Role c_role : {Role::Magician, Role::Physician}) {
      const auto w = o.world();
      const int c = w.strengths(c_role).back().rank;
      const auto& ds = w.strengths(opponent(c_role));
      if ((ds.front().rank < c && c < ds.back().rank) != static_cast<bool>(seen.count({o, c_role}))) {
        return "bracketing rule not matched in " + o.tags();
      }
    }
  }
  if (report.excluded.size() != 1 || report.excluded.front().classes.str() != "{A,C}") return "A-vs-C not excluded";
  return {};
}

int simulate(const std::vector<int>& ranks) {
  int ill = 0;
  for (int r : ranks) {
    if (r == 0) continue;
    if (ill == 0) ill = r;
    else if (r > ill) ill = 0;
  }
  return ill;
}

std::string physiology() {
  auto drink = [](const std::vector<int>& ranks) {
    std::vector<Substance> seq;
    for (int r : ranks) seq.push_back(r == 0 ? Substance::water() : Substance::poison(Strength{r}));
    return ingest_all(HealthState::healthy(), seq);
  };
  const int X = 3, Y = 2, Z = 1;
  if (!drink({Y, Z, X}).is_healthy()) return "Y,Z,X should leave the drinker healthy";
  if (drink({Y, X, Z}).is_healthy()) return "Y,X,Z should leave the drinker mortally ill";
  long checked = 0;
  auto compare = [&](const std::vector<int>& seq) {
    ++checked;
    const auto s = drink(seq);
    const int expect = simulate(seq);
    if (s.is_healthy() != (expect == 0)) return false;
    if (expect != 0 && s.threshold()->rank != expect) return false;
    return (resolve_hour(s) == HourOutcome::Alive) == (expect == 0);
  };
  for (int n = 1; n <= 5; ++n) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 1);
    do {
      if (!compare(p)) return "permutation mismatch";
    } while (std::next_permutation(p.begin(), p.end()));
  }
  // Every sequence of up to 5 drinks over water and five poison strengths.
  for (int len = 1; len <= 5; ++len) {
    std::vector<int> seq(len, 0);
    while (true) {
      if (!compare(seq)) return "sequence mismatch";
      int i = 0;
      while (i < len && ++seq[i] > 5) seq[i++] = 0;
      if (i == len) break;
    }
  }
  return checked > 9000 ? "" : "too few cases checked";
}

std::string k3_claims() {
  const auto prior = Prior::canonical(3, 3);
  std::vector<PureStrategy> ds;
  for (int i = 1; i <= 3; ++i)
    for (int j = i + 1; j <= 3; ++j) ds.push_back(PureStrategy::double_dose(i, j));
  auto value = [&](Role me, const PureStrategy& mine, const PureStrategy& theirs) {
    Rational v(0);
    for (const auto& [o, w] : prior.weights()) {
      const auto out = me == Role::Magician ? run_duel(o.world(), mine, theirs) : run_duel(o.world(), theirs, mine);
      const auto pay = payoff(out);
      v += w * (me == Role::Magician ? pay.magician : pay.physician);
    }
    return v;
  };
  std::ostringstream detail;
  for (Role me : {Role::Magician, Role::Physician}) {
    for (const auto& [opp, best] : {std::pair{PureStrategy::conventional(3), PureStrategy::double_dose(2, 3)},
                                    std::pair{PureStrategy::advanced(1), PureStrategy::double_dose(1, 2)}}) {
      Rational top(-1);
      for (const auto& d : ds) top = std::max(top, value(me, d, opp));
      if (value(me, best, opp) != top) {
        detail << to_string(me) << ": " << label(best, 3) << " does not maximize against " << label(opp, 3);
        return detail.str();
      }
    }
  }
  return {};
}

bool within(double mean, double p, std::size_t n, double sigmas) {
  return std::abs(mean - p) <= sigmas * std::sqrt(p * (1 - p) / static_cast<double>(n));
}

double mean_of(const std::vector<MatchRecord>& recs, Role r) {
  double s = 0;
  for (const auto& x : recs) s += (r == Role::Magician ? x.payoffs.magician : x.payoffs.physician).convert_to<double>();
  return s / static_cast<double>(recs.size());
}

std::string serialize(const TournamentResult& t) {
  std::ostringstream os;
  io::write_records_csv(os, t.matches);
  os << io::to_json(t.standings).dump();
  return os.str();
}

std::string tournament() {
  constexpr std::size_t n = 10000;
  const auto prior = Prior::canonical(2, 2);
  const auto self = run_match(bots::uniform_random(), bots::uniform_random(), n, 2, 20240601, prior);
  for (Role r : {Role::Magician, Role::Physician}) {
    if (!within(mean_of(self, r), 0.25, n, 4)) return "UniformRandom self-play mean " + std::to_string(mean_of(self, r));
  }
  std::uint64_t seed = 1;
  for (const auto& opp : bots::builtin_roster()) {
    const auto as_first = run_match(bots::maximin_bot(), opp, n, 2, seed++, prior);
    const auto as_second = run_match(opp, bots::maximin_bot(), n, 2, seed++, prior);
    if (!within(mean_of(as_first, Role::Magician), 0.25, n, 4) ||
        !within(mean_of(as_second, Role::Physician), 0.25, n, 4)) {
      return "MaximinBot off 1/4 against " + opp.name;
    }
  }
  const auto a = run_tournament(bots::builtin_roster(), 1000, 2, 77, prior, true);
  const auto b = run_tournament(bots::builtin_roster(), 1000, 2, 77, prior, true);
  if (serialize(a) != serialize(b)) return "replay is not byte-identical";
  return {};
}

std::string properties() {
  std::mt19937_64 gen(0x5eed);
  std::size_t grid_hits = 0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = t % 2 == 0 ? 2 : 3;
    const auto g = testing::random_game(gen, n, n);
    const auto r = support_enumeration(g);
    for (const auto& e : r.equilibria) {
      if (!verify_equilibrium(g, e)) return "verify_equilibrium failed on game " + std::to_string(t);
    }
    const auto c = testing::compare_with_grid(g, r);
    if (!c.ok) return c.detail + " on game " + std::to_string(t);
    grid_hits += c.grid_hits;
  }
  return grid_hits > 0 ? "" : "grid oracle never found an equilibrium";
}

}  // namespace

int main() {
  criterion(1, "magician-lead matrices", 1, lead_games);
  criterion(2, "physician-lead matrices and swap", 1, swapped_lead_games);
  criterion(3, "averaged game", 1, averaged_game);
  criterion(4, "three equilibria of the averaged game", 1, equilibria);
  criterion(5, "maximin 1/4 and optimality", 1, maximin_check);
  criterion(6, "best deviation is A at 1/2", 1, deviation);
  criterion(7, "cook census k=2", 1, cook_census);
  criterion(8, "physiology oracle", 5, physiology);
  criterion(9, "k=3 double-dose choices", 10, k3_claims);
  criterion(10, "tournament statistics and replay", 30, tournament);
  criterion(11, "random game property suite", 60, properties);
  std::printf("%s: %d of 11 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
