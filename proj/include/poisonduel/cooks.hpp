#pragma once

// Census of strategy pairs in which both servants die of poisoning.

#include <poisonduel/payoff.hpp>

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace poisonduel {

/// Unordered pair of strategy classes, stored with first <= second.
struct ClassPair {
  StrategyClass first;
  StrategyClass second;

  static ClassPair of(StrategyClass a, StrategyClass b) {
    return a <= b ? ClassPair{a, b} : ClassPair{b, a};
  }
  std::string str() const { return "{" + to_string(first) + "," + to_string(second) + "}"; }
  friend auto operator<=>(const ClassPair&, const ClassPair&) = default;
};

struct CookScenario {
  Ordering ordering;
  PureStrategy magician;
  PureStrategy physician;
  std::string magician_label;
  std::string physician_label;
};

struct CookGroup {
  ClassPair classes;
  std::vector<CookScenario> scenarios;

  /// Distinct orderings that realize this group, in sorted order.
  std::vector<Ordering> orderings() const {
    std::vector<Ordering> out;
    for (const auto& s : scenarios) {
      if (std::find(out.begin(), out.end(), s.ordering) == out.end()) out.push_back(s.ordering);
    }
    std::sort(out.begin(), out.end());
    return out;
  }
};

struct CookReport {
  int km = 0;
  int kp = 0;
  bool canonical = true;
  std::vector<Ordering> worlds;
  std::vector<CookGroup> groups;
  /// Canonical mode only: the A-vs-C group, listed with the mutual deaths it
  /// would contribute over every ordering.
  std::vector<CookGroup> excluded;

  const CookGroup* find(ClassPair p) const {
    for (const auto& g : groups)
      if (g.classes == p) return &g;
    return nullptr;
  }
};

/// Canonical mode: A uses its weakest poison, C its strongest, worlds obey
/// the no-dominance assumption, and A-vs-C deaths are reported as excluded.
/// When no world satisfies no-dominance (one poison each) every world is
/// used. Extended mode: every strategy in every world, nothing excluded.
inline CookReport enumerate_cooks(int km, int kp, bool canonical) {
  if (km < 1 || kp < 1) throw InputError("poison counts must be at least 1");
  CookReport report{km, kp, canonical, {}, {}, {}};
  report.worlds = enumerate_orderings(km, kp, canonical);
  if (report.worlds.empty()) report.worlds = enumerate_orderings(km, kp, false);

  const auto rows = canonical ? canonical_strategies(km) : extended_strategies(km);
  const auto cols = canonical ? canonical_strategies(kp) : extended_strategies(kp);
  const ClassPair a_vs_c = ClassPair::of(StrategyClass::A, StrategyClass::C);

  std::map<ClassPair, CookGroup> kept, set_aside;
  if (canonical) set_aside.try_emplace(a_vs_c, CookGroup{a_vs_c, {}});
  for (const auto& o : enumerate_orderings(km, kp, false)) {
    const bool admissible = std::find(report.worlds.begin(), report.worlds.end(), o) != report.worlds.end();
    const World w = o.world();
    for (const auto& m : rows) {
      for (const auto& p : cols) {
        if (!run_duel(w, m, p).mutual_poisoning()) continue;
        const auto key = ClassPair::of(classify(m), classify(p));
        const bool excluded = canonical && key == a_vs_c;
        if (!excluded && !admissible) continue;
        auto& bucket = excluded ? set_aside : kept;
        auto& group = bucket.try_emplace(key, CookGroup{key, {}}).first->second;
        group.scenarios.push_back({o, m, p, label(m, km), label(p, kp)});
      }
    }
  }
  for (auto& [k, g] : kept) report.groups.push_back(std::move(g));
  for (auto& [k, g] : set_aside) report.excluded.push_back(std::move(g));
  return report;
}

}  // namespace poisonduel
