#pragma once

// Two-state ingestion physiology: a living person is either healthy or
// mortally ill from some poison. A stronger poison cures; anything else
// leaves the state alone. Death happens only when the watch hour ends.

#include <poisonduel/rational.hpp>

#include <compare>
#include <optional>
#include <span>
#include <string>

namespace poisonduel {

/// Abstract strength rank within a world; 1 is the weakest poison. Only
/// comparisons are meaningful.
struct Strength {
  int rank = 0;
  friend auto operator<=>(const Strength&, const Strength&) = default;
};

class Substance {
 public:
  enum class Kind { Water, Poison };

  static Substance water() { return Substance(); }
  static Substance poison(Strength s) {
    if (s.rank < 1) throw InputError("poison strength rank must be positive");
    return Substance(s);
  }

  Kind kind() const { return strength_ ? Kind::Poison : Kind::Water; }
  bool is_poison() const { return strength_.has_value(); }
  /// Present iff this is a poison.
  std::optional<Strength> strength() const { return strength_; }

  friend bool operator==(const Substance&, const Substance&) = default;

 private:
  Substance() = default;
  explicit Substance(Strength s) : strength_(s) {}
  std::optional<Strength> strength_;
};

class HealthState {
 public:
  enum class Kind { Healthy, MortallyIll };

  static HealthState healthy() { return HealthState(); }
  static HealthState mortally_ill(Strength threshold) { return HealthState(threshold); }

  Kind kind() const { return threshold_ ? Kind::MortallyIll : Kind::Healthy; }
  bool is_healthy() const { return !threshold_.has_value(); }
  /// Strength of the poison currently afflicting the person; present iff ill.
  std::optional<Strength> threshold() const { return threshold_; }

  friend bool operator==(const HealthState&, const HealthState&) = default;

 private:
  HealthState() = default;
  explicit HealthState(Strength t) : threshold_(t) {}
  std::optional<Strength> threshold_;
};

enum class HourOutcome { Alive, DeadOfPoisoning };

inline HealthState ingest(const HealthState& state, const Substance& substance) {
  if (!substance.is_poison()) return state;
  const Strength s = *substance.strength();
  if (state.is_healthy()) return HealthState::mortally_ill(s);
  return s > *state.threshold() ? HealthState::healthy() : state;
}

inline HealthState ingest_all(HealthState state, std::span<const Substance> sequence) {
  for (const auto& s : sequence) state = ingest(state, s);
  return state;
}

inline HourOutcome resolve_hour(const HealthState& state) {
  return state.is_healthy() ? HourOutcome::Alive : HourOutcome::DeadOfPoisoning;
}

inline std::string to_string(const HealthState& s) {
  return s.is_healthy() ? "Healthy" : "MortallyIll(" + std::to_string(s.threshold()->rank) + ")";
}

inline std::string to_string(HourOutcome o) {
  return o == HourOutcome::Alive ? "Alive" : "DeadOfPoisoning";
}

}  // namespace poisonduel
