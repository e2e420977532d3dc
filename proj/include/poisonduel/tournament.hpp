#pragma once

// Iterated duels between pluggable bots with strengths re-drawn every
// round, and round-robin tournaments over a roster.

#include <poisonduel/equilibrium.hpp>
#include <poisonduel/payoff.hpp>
#include <poisonduel/rng.hpp>

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace poisonduel {

/// One past round from a bot's point of view. Filled in only after the
/// round resolves; the ordering that was drawn is never revealed.
struct HistoryEntry {
  std::optional<PureStrategy> own_strategy;       // empty if this bot faulted
  std::optional<StrategyClass> opponent_class;    // empty if the opponent faulted
  std::optional<ServantOutcome> own_outcome;      // empty if the duel did not happen
  std::optional<ServantOutcome> opponent_outcome;
  Rational own_payoff;
  Rational opponent_payoff;
  bool own_fault = false;
  bool opponent_fault = false;
};

/// Everything a policy may look at when choosing.
struct BotView {
  int own_poisons = 0;
  std::span<const HistoryEntry> history;
};

using Policy = std::function<PureStrategy(const BotView&, SplitMix64&)>;

struct BotSpec {
  std::string name;
  Policy policy;
};

struct MatchRecord {
  int round = 0;
  Ordering ordering;
  // bot 1 sits in the Magician's seat, bot 2 in the Physician's.
  std::optional<PureStrategy> strategy1;
  std::optional<PureStrategy> strategy2;
  std::string label1;
  std::string label2;
  std::optional<DuelOutcome> outcome;  // empty when either bot faulted
  Payoffs payoffs;
  std::string fault1;  // diagnostic, empty if no fault
  std::string fault2;

  bool faulted1() const { return !fault1.empty(); }
  bool faulted2() const { return !fault2.empty(); }
};

struct BotStanding {
  std::string name;
  long long rounds_played = 0;
  long long wins = 0;            // survived while the opponent died of poisoning
  long long losses = 0;          // died of poisoning while the opponent survived
  long long mutual_deaths = 0;
  long long executions = 0;
  long long faults = 0;
  long long opponent_faults = 0;
  Rational total_payoff{0};

  Rational mean_payoff() const {
    return rounds_played == 0 ? Rational(0) : total_payoff / Rational(rounds_played);
  }
};

struct Standings {
  std::vector<BotStanding> bots;  // roster order

  const BotStanding& at(const std::string& name) const {
    for (const auto& b : bots)
      if (b.name == name) return b;
    throw InputError("no standing for bot '" + name + "'");
  }
};

namespace detail {

inline std::vector<Rational> prior_weights(const Prior& prior, std::vector<Ordering>& orderings) {
  std::vector<Rational> w;
  for (const auto& [o, p] : prior.weights()) {
    orderings.push_back(o);
    w.push_back(p);
  }
  return w;
}

inline std::string validate_choice(const std::function<PureStrategy()>& choose, int k,
                                   std::optional<PureStrategy>& out) {
  try {
    PureStrategy s = choose();
    if (!s.fits(k)) return "strategy references a poison the bot does not own";
    out = s;
    return {};
  } catch (const std::exception& e) {
    return std::string("policy failed: ") + e.what();
  }
}

inline void tally(BotStanding& s, const MatchRecord& r, bool first_seat) {
  ++s.rounds_played;
  const bool own_fault = first_seat ? r.faulted1() : r.faulted2();
  const bool other_fault = first_seat ? r.faulted2() : r.faulted1();
  if (own_fault) {
    ++s.faults;
    return;
  }
  if (other_fault) {
    ++s.opponent_faults;
    return;
  }
  const auto own = first_seat ? r.outcome->magician : r.outcome->physician;
  const auto other = first_seat ? r.outcome->physician : r.outcome->magician;
  if (own == ServantOutcome::Executed) ++s.executions;
  else if (own == ServantOutcome::Survived) ++s.wins;
  else if (other == ServantOutcome::Survived) ++s.losses;
  else ++s.mutual_deaths;
  s.total_payoff += first_seat ? r.payoffs.magician : r.payoffs.physician;
}

}  // namespace detail

/// Plays `rounds` duels between two bots, each holding k poisons. Per round
/// the stream is split into an ordering draw and one stream per bot, so a
/// bot's randomness never depends on what the other consumed.
inline std::vector<MatchRecord> run_match(const BotSpec& bot1, const BotSpec& bot2, int rounds, int k,
                                          std::uint64_t seed, const Prior& prior) {
  if (rounds < 1) throw InputError("a match needs at least one round");
  if (k < 1) throw InputError("poison count must be at least 1");
  if (prior.counts() != std::pair{k, k}) {
    throw InputError("prior orderings do not have " + std::to_string(k) + " poisons per servant");
  }
  std::vector<Ordering> orderings;
  const auto weights = detail::prior_weights(prior, orderings);

  SplitMix64 match_rng(seed);
  std::vector<HistoryEntry> history1, history2;
  std::vector<MatchRecord> records;
  records.reserve(static_cast<std::size_t>(rounds));
  for (int round = 0; round < rounds; ++round) {
    SplitMix64 round_rng = match_rng.split();
    SplitMix64 world_rng = round_rng.split();
    SplitMix64 rng1 = round_rng.split();
    SplitMix64 rng2 = round_rng.split();

    const Ordering& ordering = orderings[world_rng.sample(weights)];
    MatchRecord rec{round, ordering, std::nullopt, std::nullopt, {}, {}, std::nullopt,
                    Payoffs{Rational(0), Rational(0)}, {}, {}};
    rec.fault1 = detail::validate_choice([&] { return bot1.policy(BotView{k, history1}, rng1); }, k, rec.strategy1);
    rec.fault2 = detail::validate_choice([&] { return bot2.policy(BotView{k, history2}, rng2); }, k, rec.strategy2);
    if (rec.strategy1) rec.label1 = label(*rec.strategy1, k);
    if (rec.strategy2) rec.label2 = label(*rec.strategy2, k);
    if (!rec.faulted1() && !rec.faulted2()) {
      rec.outcome = run_duel(ordering.world(), *rec.strategy1, *rec.strategy2);
      rec.payoffs = payoff(*rec.outcome);
    }

    auto entry = [&](bool first) {
      HistoryEntry h;
      const auto& own = first ? rec.strategy1 : rec.strategy2;
      const auto& other = first ? rec.strategy2 : rec.strategy1;
      h.own_strategy = own;
      if (other) h.opponent_class = classify(*other);
      if (rec.outcome) {
        h.own_outcome = first ? rec.outcome->magician : rec.outcome->physician;
        h.opponent_outcome = first ? rec.outcome->physician : rec.outcome->magician;
      }
      h.own_payoff = first ? rec.payoffs.magician : rec.payoffs.physician;
      h.opponent_payoff = first ? rec.payoffs.physician : rec.payoffs.magician;
      h.own_fault = first ? rec.faulted1() : rec.faulted2();
      h.opponent_fault = first ? rec.faulted2() : rec.faulted1();
      return h;
    };
    history1.push_back(entry(true));
    history2.push_back(entry(false));
    records.push_back(std::move(rec));
  }
  return records;
}

struct MatchResult {
  std::string bot1;
  std::string bot2;
  std::uint64_t seed = 0;
  std::vector<MatchRecord> records;
};

struct TournamentResult {
  std::vector<MatchResult> matches;
  Standings standings;
};

inline Standings aggregate(const std::vector<std::string>& roster, const std::vector<MatchResult>& matches) {
  Standings st;
  std::map<std::string, std::size_t> index;
  for (const auto& name : roster) {
    if (index.emplace(name, st.bots.size()).second) st.bots.push_back(BotStanding{name});
  }
  for (const auto& m : matches) {
    for (const auto& r : m.records) {
      detail::tally(st.bots.at(index.at(m.bot1)), r, true);
      detail::tally(st.bots.at(index.at(m.bot2)), r, false);
    }
  }
  return st;
}

/// Round robin over unordered pairs (i < j), plus i == j when `self_play`.
/// Match seeds are drawn from `seed` in pair order before any match runs.
inline TournamentResult run_tournament(const std::vector<BotSpec>& bots, int rounds_per_pair, int k,
                                       std::uint64_t seed, const Prior& prior, bool self_play = false) {
  if (bots.size() < 2) throw InputError("a tournament needs at least two bots");
  std::vector<std::string> roster;
  for (const auto& b : bots) {
    if (std::find(roster.begin(), roster.end(), b.name) != roster.end()) {
      throw InputError("duplicate bot name '" + b.name + "'");
    }
    roster.push_back(b.name);
  }
  SplitMix64 root(seed);
  TournamentResult result;
  for (std::size_t i = 0; i < bots.size(); ++i) {
    for (std::size_t j = self_play ? i : i + 1; j < bots.size(); ++j) {
      const std::uint64_t match_seed = root.next();
      result.matches.push_back(
          {bots[i].name, bots[j].name, match_seed, run_match(bots[i], bots[j], rounds_per_pair, k, match_seed, prior)});
    }
  }
  result.standings = aggregate(roster, result.matches);
  return result;
}

// Built-in roster.

namespace bots {

inline BotSpec fixed(std::string name, std::function<PureStrategy(int)> choose) {
  return {std::move(name), [choose = std::move(choose)](const BotView& v, SplitMix64&) { return choose(v.own_poisons); }};
}

inline BotSpec always_a() { return fixed("AlwaysA", [](int) { return PureStrategy::advanced(1); }); }
inline BotSpec always_b() { return fixed("AlwaysB", [](int) { return PureStrategy::blank(); }); }
inline BotSpec always_c() { return fixed("AlwaysC", [](int k) { return PureStrategy::conventional(k); }); }
/// Uses its two strongest poisons.
inline BotSpec always_d() {
  return fixed("AlwaysD", [](int k) {
    if (k < 2) throw InputError("strategy D needs two poisons");
    return PureStrategy::double_dose(k - 1, k);
  });
}

/// Uniform over the canonical strategies for its poison count.
inline BotSpec uniform_random() {
  return {"UniformRandom", [](const BotView& v, SplitMix64& rng) {
            const auto options = canonical_strategies(v.own_poisons);
            return options[rng.uniform_below(options.size())];
          }};
}

/// Security strategy of the canonical expected-payoff game for its poison
/// count (for k = 2: B, C, D with 1/4, 1/2, 1/4).
inline BotSpec maximin_bot() {
  struct Cache {
    std::mutex mu;
    std::map<int, MaximinResult> by_k;
  };
  auto cache = std::make_shared<Cache>();
  return {"MaximinBot", [cache](const BotView& v, SplitMix64& rng) {
            const int k = v.own_poisons;
            RationalVector probs;
            {
              std::lock_guard lock(cache->mu);
              auto it = cache->by_k.find(k);
              if (it == cache->by_k.end()) {
                it = cache->by_k.emplace(k, maximin(expected_game(Prior::canonical(k, k)), Player::Row)).first;
              }
              probs = it->second.strategy.probs();
            }
            return canonical_strategies(k)[rng.sample(probs)];
          }};
}

/// Plays whatever beats the opponent's previous class; random at first.
inline BotSpec sicilian() {
  return {"Sicilian", [](const BotView& v, SplitMix64& rng) {
            const int k = v.own_poisons;
            std::optional<StrategyClass> last;
            if (!v.history.empty()) last = v.history.back().opponent_class;
            if (!last) {
              const auto options = canonical_strategies(k);
              return options[rng.uniform_below(options.size())];
            }
            switch (*last) {
              case StrategyClass::A: return PureStrategy::blank();
              case StrategyClass::B:
                return k >= 2 ? PureStrategy::double_dose(k - 1, k) : PureStrategy::conventional(k);
              case StrategyClass::C: return PureStrategy::advanced(1);
              case StrategyClass::D: return PureStrategy::conventional(k);
            }
            return PureStrategy::blank();
          }};
}

inline std::vector<BotSpec> builtin_roster() {
  return {always_a(), always_b(), always_c(), always_d(), uniform_random(), maximin_bot(), sicilian()};
}

inline std::optional<BotSpec> find(const std::string& name) {
  for (auto& b : builtin_roster())
    if (b.name == name) return b;
  return std::nullopt;
}

}  // namespace bots

}  // namespace poisonduel
