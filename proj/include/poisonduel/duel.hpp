#pragma once

// Strategies, worlds and the King's drinking protocol.

#include <poisonduel/physiology.hpp>

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace poisonduel {

enum class Role { Magician, Physician };

inline Role opponent(Role r) { return r == Role::Magician ? Role::Physician : Role::Magician; }
inline std::string to_string(Role r) { return r == Role::Magician ? "Magician" : "Physician"; }

/// Assignment of distinct strength ranks 1..kM+kP to the two servants'
/// poisons. Each servant's poisons are kept weakest-first.
class World {
 public:
  World(std::vector<Strength> magician, std::vector<Strength> physician)
      : magician_(std::move(magician)), physician_(std::move(physician)) {
    if (magician_.empty() || physician_.empty()) {
      throw InputError("each servant must own at least one poison");
    }
    std::sort(magician_.begin(), magician_.end());
    std::sort(physician_.begin(), physician_.end());
    std::vector<int> seen(magician_.size() + physician_.size() + 1, 0);
    for (const auto* set : {&magician_, &physician_}) {
      for (Strength s : *set) {
        if (s.rank < 1 || s.rank >= static_cast<int>(seen.size()) || seen[s.rank]++) {
          throw InputError("world strengths must be a permutation of 1..kM+kP");
        }
      }
    }
  }

  /// Builds a world from a strongest-first tag string such as "MPMP".
  static World from_tags(const std::string& tags) {
    std::vector<Strength> m, p;
    const int n = static_cast<int>(tags.size());
    for (int i = 0; i < n; ++i) {
      const Strength s{n - i};
      if (tags[i] == 'M') m.push_back(s);
      else if (tags[i] == 'P') p.push_back(s);
      else throw InputError("ordering tags must be 'M' or 'P': '" + tags + "'");
    }
    return World(std::move(m), std::move(p));
  }

  /// Strongest-first tag string, e.g. "MPMP".
  std::string tags() const {
    std::string out(total(), '?');
    for (Strength s : magician_) out[total() - s.rank] = 'M';
    for (Strength s : physician_) out[total() - s.rank] = 'P';
    return out;
  }

  const std::vector<Strength>& strengths(Role r) const {
    return r == Role::Magician ? magician_ : physician_;
  }
  int poison_count(Role r) const { return static_cast<int>(strengths(r).size()); }
  std::size_t total() const { return magician_.size() + physician_.size(); }

  /// Servant roles exchanged; the strength order is unchanged.
  World mirrored() const { return World(physician_, magician_); }

  friend bool operator==(const World&, const World&) = default;

 private:
  std::vector<Strength> magician_;
  std::vector<Strength> physician_;
};

/// Reference to one of the acting servant's own poisons by own-strength
/// position: 1 is that servant's weakest.
struct OwnPoison {
  int index = 0;
  friend auto operator<=>(const OwnPoison&, const OwnPoison&) = default;
};

enum class StrategyClass { A, B, C, D };

inline std::string to_string(StrategyClass c) {
  switch (c) {
    case StrategyClass::A: return "A";
    case StrategyClass::B: return "B";
    case StrategyClass::C: return "C";
    case StrategyClass::D: return "D";
  }
  return "?";
}

/// What a servant drinks before arriving and what they bring. When both are
/// poisons the brought one must be strictly stronger.
class PureStrategy {
 public:
  static PureStrategy make(std::optional<OwnPoison> pre_drink, std::optional<OwnPoison> brings) {
    for (const auto& ref : {pre_drink, brings}) {
      if (ref && ref->index < 1) throw InputError("poison references are 1-based");
    }
    if (pre_drink && brings && !(brings->index > pre_drink->index)) {
      throw InputError("a brought poison must be strictly stronger than the pre-drunk one");
    }
    return PureStrategy(pre_drink, brings);
  }

  static PureStrategy advanced(int pre_drink) { return make(OwnPoison{pre_drink}, std::nullopt); }
  static PureStrategy blank() { return make(std::nullopt, std::nullopt); }
  static PureStrategy conventional(int brings) { return make(std::nullopt, OwnPoison{brings}); }
  static PureStrategy double_dose(int pre_drink, int brings) {
    return make(OwnPoison{pre_drink}, OwnPoison{brings});
  }

  const std::optional<OwnPoison>& pre_drink() const { return pre_drink_; }
  /// Empty means the servant brings water.
  const std::optional<OwnPoison>& brings() const { return brings_; }

  /// True iff every reference names one of `own_count` poisons.
  bool fits(int own_count) const {
    return (!pre_drink_ || pre_drink_->index <= own_count) && (!brings_ || brings_->index <= own_count);
  }

  friend bool operator==(const PureStrategy&, const PureStrategy&) = default;

 private:
  PureStrategy(std::optional<OwnPoison> pre, std::optional<OwnPoison> brings)
      : pre_drink_(pre), brings_(brings) {}
  std::optional<OwnPoison> pre_drink_;
  std::optional<OwnPoison> brings_;
};

inline StrategyClass classify(const PureStrategy& s) {
  if (s.pre_drink()) return s.brings() ? StrategyClass::D : StrategyClass::A;
  return s.brings() ? StrategyClass::C : StrategyClass::B;
}

/// Stable label for a strategy of a servant holding `own_count` poisons.
/// Canonical choices get the bare class letter ("A" = weakest pre-drunk,
/// "C" = strongest brought, "D" when only one pair exists); everything else
/// carries its own-poison indices, e.g. "A(2)", "C(1)", "D(1,3)".
inline std::string label(const PureStrategy& s, int own_count) {
  const auto cls = classify(s);
  switch (cls) {
    case StrategyClass::A:
      return s.pre_drink()->index == 1 ? "A" : "A(" + std::to_string(s.pre_drink()->index) + ")";
    case StrategyClass::B:
      return "B";
    case StrategyClass::C:
      return s.brings()->index == own_count ? "C" : "C(" + std::to_string(s.brings()->index) + ")";
    case StrategyClass::D:
      if (own_count == 2) return "D";
      return "D(" + std::to_string(s.pre_drink()->index) + "," + std::to_string(s.brings()->index) + ")";
  }
  return "?";
}

enum class ServantOutcome { Survived, DiedOfPoisoning, Executed };

inline std::string to_string(ServantOutcome o) {
  switch (o) {
    case ServantOutcome::Survived: return "Survived";
    case ServantOutcome::DiedOfPoisoning: return "DiedOfPoisoning";
    case ServantOutcome::Executed: return "Executed";
  }
  return "?";
}

struct DuelOutcome {
  ServantOutcome magician;
  ServantOutcome physician;

  ServantOutcome of(Role r) const { return r == Role::Magician ? magician : physician; }
  DuelOutcome mirrored() const { return {physician, magician}; }
  bool mutual_poisoning() const {
    return magician == ServantOutcome::DiedOfPoisoning && physician == ServantOutcome::DiedOfPoisoning;
  }
  friend bool operator==(const DuelOutcome&, const DuelOutcome&) = default;
};

namespace detail {

inline Substance resolve(const World& world, Role owner, const std::optional<OwnPoison>& ref) {
  if (!ref) return Substance::water();
  const auto& own = world.strengths(owner);
  if (ref->index < 1 || ref->index > static_cast<int>(own.size())) {
    throw InputError(to_string(owner) + " references poison " + std::to_string(ref->index) +
                     " but owns " + std::to_string(own.size()));
  }
  return Substance::poison(own[ref->index - 1]);
}

}  // namespace detail

/// Health state of `self` at the end of the drinking ordeal: own pre-drink,
/// then the opponent's vial, then their own.
inline HealthState ordeal_state(const World& world, Role self, const PureStrategy& own,
                                const PureStrategy& other) {
  HealthState s = HealthState::healthy();
  if (own.pre_drink()) s = ingest(s, detail::resolve(world, self, own.pre_drink()));
  s = ingest(s, detail::resolve(world, opponent(self), other.brings()));
  s = ingest(s, detail::resolve(world, self, own.brings()));
  return s;
}

inline DuelOutcome run_duel(const World& world, const PureStrategy& magician, const PureStrategy& physician) {
  const auto m = resolve_hour(ordeal_state(world, Role::Magician, magician, physician));
  const auto p = resolve_hour(ordeal_state(world, Role::Physician, physician, magician));
  if (m == HourOutcome::Alive && p == HourOutcome::Alive) {
    return {ServantOutcome::Executed, ServantOutcome::Executed};
  }
  auto map = [](HourOutcome o) {
    return o == HourOutcome::Alive ? ServantOutcome::Survived : ServantOutcome::DiedOfPoisoning;
  };
  return {map(m), map(p)};
}

struct Payoffs {
  Rational magician;
  Rational physician;
  const Rational& of(Role r) const { return r == Role::Magician ? magician : physician; }
  friend bool operator==(const Payoffs&, const Payoffs&) = default;
};

/// 1 to a servant who survives while the opponent dies of poisoning, else 0.
inline Payoffs payoff(const DuelOutcome& o) {
  auto wins = [](ServantOutcome self, ServantOutcome other) {
    return self == ServantOutcome::Survived && other == ServantOutcome::DiedOfPoisoning;
  };
  return {Rational(wins(o.magician, o.physician) ? 1 : 0), Rational(wins(o.physician, o.magician) ? 1 : 0)};
}

/// Every strategy a servant with `own_count` poisons can play, including
/// dominated choices: A(i), B, C(j), D(i,j) with i < j.
inline std::vector<PureStrategy> extended_strategies(int own_count) {
  if (own_count < 1) throw InputError("poison count must be at least 1");
  std::vector<PureStrategy> out;
  for (int i = 1; i <= own_count; ++i) out.push_back(PureStrategy::advanced(i));
  out.push_back(PureStrategy::blank());
  for (int j = own_count; j >= 1; --j) out.push_back(PureStrategy::conventional(j));
  for (int i = 1; i <= own_count; ++i)
    for (int j = i + 1; j <= own_count; ++j) out.push_back(PureStrategy::double_dose(i, j));
  return out;
}

}  // namespace poisonduel
