#pragma once

// Payoff games derived from first principles: for each strength ordering,
// play every strategy pair through the duel engine; then average the
// per-ordering games under a prior.

#include <poisonduel/duel.hpp>

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace poisonduel {

/// Strongest-first owner tags, e.g. "MPMP".
class Ordering {
 public:
  explicit Ordering(std::string tags) : tags_(std::move(tags)) {
    if (tags_.empty()) throw InputError("empty ordering");
    for (char c : tags_) {
      if (c != 'M' && c != 'P') throw InputError("ordering tags must be 'M' or 'P': '" + tags_ + "'");
    }
    if (count(Role::Magician) == 0 || count(Role::Physician) == 0) {
      throw InputError("each servant needs at least one poison: '" + tags_ + "'");
    }
  }

  static Ordering of(const World& w) { return Ordering(w.tags()); }

  const std::string& tags() const { return tags_; }
  int count(Role r) const {
    return static_cast<int>(std::count(tags_.begin(), tags_.end(), r == Role::Magician ? 'M' : 'P'));
  }
  World world() const { return World::from_tags(tags_); }

  Ordering mirrored() const {
    std::string t = tags_;
    for (char& c : t) c = (c == 'M') ? 'P' : 'M';
    return Ordering(std::move(t));
  }

  /// One servant's poisons all outrank the other's.
  bool is_dominance() const {
    const auto first_switch = tags_.find(tags_[0] == 'M' ? 'P' : 'M');
    return tags_.find(tags_[0], first_switch) == std::string::npos;
  }

  friend auto operator<=>(const Ordering&, const Ordering&) = default;

 private:
  std::string tags_;
};

/// All interleavings of kM M's and kP P's in lexicographic order,
/// optionally without the two dominance orderings.
inline std::vector<Ordering> enumerate_orderings(int km, int kp, bool exclude_dominance) {
  if (km < 1 || kp < 1) throw InputError("poison counts must be at least 1");
  std::string tags = std::string(static_cast<std::size_t>(km), 'M') + std::string(static_cast<std::size_t>(kp), 'P');
  std::vector<Ordering> out;
  do {
    Ordering o(tags);
    if (!(exclude_dominance && o.is_dominance())) out.push_back(std::move(o));
  } while (std::next_permutation(tags.begin(), tags.end()));
  return out;
}

/// Probability weights over orderings. Nonnegative, summing to exactly 1.
class Prior {
 public:
  explicit Prior(std::map<Ordering, Rational> weights) : weights_(std::move(weights)) {
    Rational total(0);
    for (const auto& [o, w] : weights_) {
      if (w < 0) throw InputError("prior weight for " + o.tags() + " is negative");
      total += w;
    }
    if (total != 1) throw InputError("prior weights sum to " + to_pq(total) + ", expected 1/1");
    std::erase_if(weights_, [](const auto& kv) { return kv.second == 0; });
    counts();
  }

  static Prior uniform(const std::vector<Ordering>& support) {
    if (support.empty()) throw InputError("uniform prior over an empty ordering set");
    std::map<Ordering, Rational> w;
    const Rational each(1, static_cast<long long>(support.size()));
    for (const auto& o : support) w[o] += each;
    return Prior(std::move(w));
  }
  static Prior point_mass(const Ordering& o) { return Prior({{o, Rational(1)}}); }

  /// Uniform over the orderings that satisfy the no-dominance assumption.
  /// With one poison each no such ordering exists; then all orderings.
  static Prior canonical(int km, int kp) {
    auto admissible = enumerate_orderings(km, kp, true);
    return admissible.empty() ? all_orderings(km, kp) : uniform(admissible);
  }
  static Prior all_orderings(int km, int kp) { return uniform(enumerate_orderings(km, kp, false)); }

  const std::map<Ordering, Rational>& weights() const { return weights_; }

  /// Poison counts implied by the support. All orderings must agree.
  std::pair<int, int> counts() const {
    const auto& first = weights_.begin()->first;
    for (const auto& [o, w] : weights_) {
      if (o.count(Role::Magician) != first.count(Role::Magician) ||
          o.count(Role::Physician) != first.count(Role::Physician)) {
        throw InputError("prior mixes orderings with different poison counts");
      }
    }
    return {first.count(Role::Magician), first.count(Role::Physician)};
  }

 private:
  std::map<Ordering, Rational> weights_;
};

/// Two-player game with separate payoff matrices; rows belong to the
/// Magician, columns to the Physician.
struct BimatrixGame {
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  RationalMatrix row_payoffs;
  RationalMatrix col_payoffs;

  BimatrixGame() = default;
  BimatrixGame(std::vector<std::string> rows, std::vector<std::string> cols, RationalMatrix row_pay,
               RationalMatrix col_pay)
      : row_labels(std::move(rows)), col_labels(std::move(cols)),
        row_payoffs(std::move(row_pay)), col_payoffs(std::move(col_pay)) {
    validate();
  }

  std::size_t rows() const { return row_labels.size(); }
  std::size_t cols() const { return col_labels.size(); }

  void validate() const {
    if (row_labels.empty() || col_labels.empty()) throw InputError("game needs at least one strategy per player");
    for (const auto* m : {&row_payoffs, &col_payoffs}) {
      if (m->rows() != row_labels.size() || m->cols() != col_labels.size()) {
        throw InputError("payoff matrix shape does not match label counts");
      }
    }
  }

  /// The same game seen with the players exchanged.
  BimatrixGame swapped() const {
    return BimatrixGame(col_labels, row_labels, col_payoffs.transposed(), row_payoffs.transposed());
  }

  friend bool operator==(const BimatrixGame&, const BimatrixGame&) = default;
};

/// A (weakest pre-drunk), B, C (strongest brought), then every D pair in
/// order (1,2), (1,3), ..., (k-1,k).
inline std::vector<PureStrategy> canonical_strategies(int own_count) {
  if (own_count < 1) throw InputError("poison count must be at least 1");
  std::vector<PureStrategy> out{PureStrategy::advanced(1), PureStrategy::blank(),
                                PureStrategy::conventional(own_count)};
  for (int i = 1; i <= own_count; ++i)
    for (int j = i + 1; j <= own_count; ++j) out.push_back(PureStrategy::double_dose(i, j));
  return out;
}

inline std::vector<std::string> labels_of(const std::vector<PureStrategy>& strategies, int own_count) {
  std::vector<std::string> out;
  out.reserve(strategies.size());
  for (const auto& s : strategies) out.push_back(label(s, own_count));
  return out;
}

inline BimatrixGame derive_matrix(const Ordering& ordering, const std::vector<PureStrategy>& rows,
                                  const std::vector<PureStrategy>& cols) {
  const World world = ordering.world();
  const int km = world.poison_count(Role::Magician);
  const int kp = world.poison_count(Role::Physician);
  RationalMatrix row_pay(rows.size(), cols.size());
  RationalMatrix col_pay(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      const Payoffs p = payoff(run_duel(world, rows[i], cols[j]));
      row_pay(i, j) = p.magician;
      col_pay(i, j) = p.physician;
    }
  }
  return BimatrixGame(labels_of(rows, km), labels_of(cols, kp), std::move(row_pay), std::move(col_pay));
}

/// Canonical strategy game for one ordering.
inline BimatrixGame derive_matrix(const Ordering& ordering) {
  return derive_matrix(ordering, canonical_strategies(ordering.count(Role::Magician)),
                       canonical_strategies(ordering.count(Role::Physician)));
}

/// Entrywise convex combination of per-ordering games.
inline BimatrixGame average(const Prior& prior, const std::map<Ordering, BimatrixGame>& games) {
  const BimatrixGame* shape = nullptr;
  for (const auto& [o, w] : prior.weights()) {
    auto it = games.find(o);
    if (it == games.end()) throw InputError("no game derived for prior ordering " + o.tags());
    if (shape == nullptr) {
      shape = &it->second;
    } else if (it->second.row_labels != shape->row_labels || it->second.col_labels != shape->col_labels) {
      throw InputError("cannot average games with different strategy labels");
    }
  }
  if (shape == nullptr) throw InputError("empty prior");
  RationalMatrix row_pay(shape->rows(), shape->cols());
  RationalMatrix col_pay(shape->rows(), shape->cols());
  for (const auto& [o, w] : prior.weights()) {
    const auto& g = games.at(o);
    for (std::size_t i = 0; i < shape->rows(); ++i) {
      for (std::size_t j = 0; j < shape->cols(); ++j) {
        row_pay(i, j) += w * g.row_payoffs(i, j);
        col_pay(i, j) += w * g.col_payoffs(i, j);
      }
    }
  }
  return BimatrixGame(shape->row_labels, shape->col_labels, std::move(row_pay), std::move(col_pay));
}

/// Per-ordering canonical games for every ordering in the prior's support.
inline std::map<Ordering, BimatrixGame> derive_all(const Prior& prior) {
  std::map<Ordering, BimatrixGame> out;
  for (const auto& [o, w] : prior.weights()) out.emplace(o, derive_matrix(o));
  return out;
}

/// The expected-payoff game under `prior` with canonical strategies.
inline BimatrixGame expected_game(const Prior& prior) { return average(prior, derive_all(prior)); }

}  // namespace poisonduel
