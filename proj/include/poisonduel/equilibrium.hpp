#pragma once

// Nash equilibria by exact support enumeration, best responses, and
// maximin (security) strategies for bimatrix games.

#include <poisonduel/linalg.hpp>
#include <poisonduel/payoff.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace poisonduel {

enum class Player { Row, Column };

inline std::string to_string(Player p) { return p == Player::Row ? "row" : "column"; }

class MixedStrategy {
 public:
  explicit MixedStrategy(RationalVector probs) : probs_(std::move(probs)) {
    if (probs_.empty()) throw InputError("mixed strategy over no strategies");
    Rational total(0);
    for (const auto& p : probs_) {
      if (p < 0) throw InputError("mixed strategy has a negative probability");
      total += p;
    }
    if (total != 1) throw InputError("mixed strategy sums to " + to_pq(total) + ", expected 1/1");
  }

  static MixedStrategy pure(std::size_t n, std::size_t index) {
    RationalVector p(n, Rational(0));
    p.at(index) = 1;
    return MixedStrategy(std::move(p));
  }
  static MixedStrategy uniform(std::size_t n) {
    return MixedStrategy(RationalVector(n, Rational(1, static_cast<long long>(n))));
  }

  const RationalVector& probs() const { return probs_; }
  std::size_t size() const { return probs_.size(); }
  const Rational& operator[](std::size_t i) const { return probs_[i]; }

  std::vector<std::size_t> support() const {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < probs_.size(); ++i)
      if (probs_[i] > 0) s.push_back(i);
    return s;
  }

  friend bool operator==(const MixedStrategy&, const MixedStrategy&) = default;

 private:
  RationalVector probs_;
};

struct NashEquilibrium {
  MixedStrategy row_mix;
  MixedStrategy col_mix;
  Rational row_value;
  Rational col_value;
  friend bool operator==(const NashEquilibrium&, const NashEquilibrium&) = default;
};

struct ExpectedPayoffs {
  Rational row;
  Rational col;
  friend bool operator==(const ExpectedPayoffs&, const ExpectedPayoffs&) = default;
};

struct BestResponse {
  Rational value;
  std::vector<std::size_t> argmax;  // every maximizing pure strategy, ascending
};

struct MaximinResult {
  MixedStrategy strategy;
  Rational guaranteed_value;
};

/// Extreme point of one side of a degenerate support pair: a mix, plus the
/// payoff the opposing player earns on its support against that mix.
struct FamilyVertex {
  MixedStrategy mix;
  Rational induced_value;
  friend bool operator==(const FamilyVertex&, const FamilyVertex&) = default;
};

/// A support pair whose equilibria form a polytope rather than a point.
/// Every (row vertex, column vertex) combination is an equilibrium, and so
/// is every point of the product of their convex hulls.
struct DegenerateFamily {
  std::vector<std::size_t> row_support;
  std::vector<std::size_t> col_support;
  std::vector<FamilyVertex> row_vertices;
  std::vector<FamilyVertex> col_vertices;
};

struct SupportEnumerationResult {
  std::vector<NashEquilibrium> equilibria;
  std::vector<DegenerateFamily> degenerate_families;
  bool degenerate() const { return !degenerate_families.empty(); }
};

struct SupportEnumerationOptions {
  /// Largest strategy count per player accepted; support pairs grow as
  /// (2^m - 1)(2^n - 1).
  std::size_t max_strategies = 10;
};

namespace detail {

inline void check_dims(const BimatrixGame& g, const MixedStrategy& row, const MixedStrategy& col) {
  if (row.size() != g.rows() || col.size() != g.cols()) {
    throw InputError("mixed strategy dimensions do not match the game");
  }
}

/// payoff_to_opponent(s, t): payoff of opponent strategy t when the mixer
/// plays s. Rows are the mixer's strategies.
inline RationalVector opponent_payoffs(const RationalMatrix& payoff_to_opponent, const RationalVector& mix) {
  RationalVector out(payoff_to_opponent.cols(), Rational(0));
  for (std::size_t s = 0; s < payoff_to_opponent.rows(); ++s) {
    if (mix[s] == 0) continue;
    for (std::size_t t = 0; t < payoff_to_opponent.cols(); ++t) out[t] += mix[s] * payoff_to_opponent(s, t);
  }
  return out;
}

inline std::vector<std::vector<std::size_t>> nonempty_subsets(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1U) s.push_back(i);
    out.push_back(std::move(s));
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

/// Calls f(indices) for each k-subset of {0..n-1} in lexicographic order.
/// Stops early when f returns false.
template <typename F>
void for_each_combination(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (!f(idx)) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

struct SideAnalysis {
  std::vector<FamilyVertex> vertices;
  bool supported = false;  // some point is strictly positive on the whole support
  bool unique() const { return vertices.size() == 1; }
};

/// Polytope of mixes z supported within `own_support` that make every
/// opponent strategy in `opp_support` a best response:
///   z >= 0, sum z = 1, (z P)_t = w for t in opp_support, (z P)_t <= w otherwise.
/// Vertices are found by adding tight inequalities to the equality system
/// until it has a unique solution.
inline SideAnalysis analyze_side(const RationalMatrix& payoff_to_opponent,
                                 const std::vector<std::size_t>& own_support,
                                 const std::vector<std::size_t>& opp_support) {
  const std::size_t own_n = payoff_to_opponent.rows();
  const std::size_t opp_n = payoff_to_opponent.cols();
  const std::size_t unknowns = own_support.size() + 1;  // z on support, then w

  std::vector<RationalVector> equalities;
  RationalVector rhs;
  equalities.emplace_back(unknowns, Rational(0));
  for (std::size_t a = 0; a < own_support.size(); ++a) equalities.back()[a] = 1;
  rhs.emplace_back(1);
  for (std::size_t t : opp_support) {
    RationalVector row(unknowns, Rational(0));
    for (std::size_t a = 0; a < own_support.size(); ++a) row[a] = payoff_to_opponent(own_support[a], t);
    row[unknowns - 1] = -1;
    equalities.push_back(std::move(row));
    rhs.emplace_back(0);
  }

  // Candidate tight inequalities: z_a = 0, then (zP)_t = w for t off support.
  std::vector<RationalVector> candidates;
  for (std::size_t a = 0; a < own_support.size(); ++a) {
    RationalVector row(unknowns, Rational(0));
    row[a] = 1;
    candidates.push_back(std::move(row));
  }
  std::vector<bool> in_opp(opp_n, false);
  for (std::size_t t : opp_support) in_opp[t] = true;
  for (std::size_t t = 0; t < opp_n; ++t) {
    if (in_opp[t]) continue;
    RationalVector row(unknowns, Rational(0));
    for (std::size_t a = 0; a < own_support.size(); ++a) row[a] = payoff_to_opponent(own_support[a], t);
    row[unknowns - 1] = -1;
    candidates.push_back(std::move(row));
  }

  auto solve_rows = [&](const std::vector<const RationalVector*>& extra) {
    RationalMatrix m(equalities.size() + extra.size(), unknowns);
    RationalVector b(m.rows(), Rational(0));
    for (std::size_t i = 0; i < equalities.size(); ++i) {
      for (std::size_t j = 0; j < unknowns; ++j) m(i, j) = equalities[i][j];
      b[i] = rhs[i];
    }
    for (std::size_t e = 0; e < extra.size(); ++e)
      for (std::size_t j = 0; j < unknowns; ++j) m(equalities.size() + e, j) = (*extra[e])[j];
    return linalg::solve(m, b);
  };

  SideAnalysis out;
  auto accept = [&](const RationalVector& sol) {
    RationalVector mix(own_n, Rational(0));
    for (std::size_t a = 0; a < own_support.size(); ++a) {
      if (sol[a] < 0) return;
      mix[own_support[a]] = sol[a];
    }
    const Rational& w = sol[unknowns - 1];
    const auto pay = opponent_payoffs(payoff_to_opponent, mix);
    for (std::size_t t = 0; t < opp_n; ++t)
      if (!in_opp[t] && pay[t] > w) return;
    FamilyVertex v{MixedStrategy(std::move(mix)), w};
    if (std::find(out.vertices.begin(), out.vertices.end(), v) == out.vertices.end()) {
      out.vertices.push_back(std::move(v));
    }
  };

  const auto base = solve_rows({});
  if (base.kind == linalg::SolutionKind::Inconsistent) return out;
  if (base.kind == linalg::SolutionKind::Unique) {
    accept(base.x);
  } else {
    for_each_combination(candidates.size(), base.nullity, [&](const std::vector<std::size_t>& pick) {
      std::vector<const RationalVector*> extra;
      for (std::size_t c : pick) extra.push_back(&candidates[c]);
      const auto s = solve_rows(extra);
      if (s.kind == linalg::SolutionKind::Unique) accept(s.x);
      return true;
    });
  }

  out.supported = !out.vertices.empty();
  for (std::size_t s : own_support) {
    const bool positive_somewhere = std::any_of(out.vertices.begin(), out.vertices.end(),
                                                [&](const FamilyVertex& v) { return v.mix[s] > 0; });
    if (!positive_somewhere) out.supported = false;
  }
  return out;
}

}  // namespace detail

inline ExpectedPayoffs expected_payoffs(const BimatrixGame& game, const MixedStrategy& row_mix,
                                        const MixedStrategy& col_mix) {
  detail::check_dims(game, row_mix, col_mix);
  ExpectedPayoffs out{Rational(0), Rational(0)};
  for (std::size_t i = 0; i < game.rows(); ++i) {
    if (row_mix[i] == 0) continue;
    for (std::size_t j = 0; j < game.cols(); ++j) {
      if (col_mix[j] == 0) continue;
      const Rational w = row_mix[i] * col_mix[j];
      out.row += w * game.row_payoffs(i, j);
      out.col += w * game.col_payoffs(i, j);
    }
  }
  return out;
}

/// Payoff of each of `player`'s pure strategies against `opponent_mix`.
inline RationalVector pure_payoffs(const BimatrixGame& game, Player player, const MixedStrategy& opponent_mix) {
  if (player == Player::Row) {
    if (opponent_mix.size() != game.cols()) throw InputError("opponent mix does not match column count");
    return detail::opponent_payoffs(game.row_payoffs.transposed(), opponent_mix.probs());
  }
  if (opponent_mix.size() != game.rows()) throw InputError("opponent mix does not match row count");
  return detail::opponent_payoffs(game.col_payoffs, opponent_mix.probs());
}

inline BestResponse best_response(const BimatrixGame& game, Player player, const MixedStrategy& opponent_mix) {
  const auto pay = pure_payoffs(game, player, opponent_mix);
  BestResponse out{*std::max_element(pay.begin(), pay.end()), {}};
  for (std::size_t i = 0; i < pay.size(); ++i)
    if (pay[i] == out.value) out.argmax.push_back(i);
  return out;
}

/// Exact check: the stated values are the actual expected payoffs and no pure
/// deviation by either player earns more.
inline bool verify_equilibrium(const BimatrixGame& game, const NashEquilibrium& eq) {
  if (eq.row_mix.size() != game.rows() || eq.col_mix.size() != game.cols()) return false;
  const auto actual = expected_payoffs(game, eq.row_mix, eq.col_mix);
  if (actual.row != eq.row_value || actual.col != eq.col_value) return false;
  return best_response(game, Player::Row, eq.col_mix).value == eq.row_value &&
         best_response(game, Player::Column, eq.row_mix).value == eq.col_value;
}

/// All equilibria with isolated solutions per support pair, plus flagged
/// families for support pairs whose solution sets are polytopes. Output is
/// ordered by total support size, then row support, then column support.
inline SupportEnumerationResult support_enumeration(const BimatrixGame& game,
                                                    const SupportEnumerationOptions& options = {}) {
  game.validate();
  if (game.rows() > options.max_strategies || game.cols() > options.max_strategies) {
    throw CapabilityError("support enumeration is limited to " + std::to_string(options.max_strategies) +
                          " strategies per player; game is " + std::to_string(game.rows()) + "x" +
                          std::to_string(game.cols()));
  }
  // Column side solves against the row player's payoffs with mixer = column.
  const RationalMatrix row_pay_by_col = game.row_payoffs.transposed();
  const auto row_sets = detail::nonempty_subsets(game.rows());
  const auto col_sets = detail::nonempty_subsets(game.cols());

  struct Found {
    const std::vector<std::size_t>* rows;
    const std::vector<std::size_t>* cols;
    std::optional<NashEquilibrium> eq;
    std::optional<DegenerateFamily> family;
  };
  std::vector<Found> found;
  for (const auto& rs : row_sets) {
    for (const auto& cs : col_sets) {
      auto col_side = detail::analyze_side(row_pay_by_col, cs, rs);
      if (!col_side.supported) continue;
      auto row_side = detail::analyze_side(game.col_payoffs, rs, cs);
      if (!row_side.supported) continue;
      Found f{&rs, &cs, std::nullopt, std::nullopt};
      if (row_side.unique() && col_side.unique()) {
        auto& x = row_side.vertices.front();
        auto& y = col_side.vertices.front();
        f.eq = NashEquilibrium{x.mix, y.mix, y.induced_value, x.induced_value};
      } else {
        f.family = DegenerateFamily{rs, cs, std::move(row_side.vertices), std::move(col_side.vertices)};
      }
      found.push_back(std::move(f));
    }
  }
  std::stable_sort(found.begin(), found.end(), [](const Found& a, const Found& b) {
    const auto sa = a.rows->size() + a.cols->size();
    const auto sb = b.rows->size() + b.cols->size();
    if (sa != sb) return sa < sb;
    if (*a.rows != *b.rows) return *a.rows < *b.rows;
    return *a.cols < *b.cols;
  });

  SupportEnumerationResult out;
  for (auto& f : found) {
    if (f.eq) out.equilibria.push_back(std::move(*f.eq));
    else out.degenerate_families.push_back(std::move(*f.family));
  }
  return out;
}

/// Mixed strategy maximizing `player`'s worst-case expected payoff over the
/// opponent's pure strategies. Exhausts the vertices of the security
/// polytope; ties keep the first optimal vertex found.
inline MaximinResult maximin(const BimatrixGame& game, Player player) {
  game.validate();
  // own(i, j): payoff to `player` when it plays i and the opponent plays j.
  const RationalMatrix own = player == Player::Row ? game.row_payoffs : game.col_payoffs.transposed();
  const std::size_t m = own.rows();
  const std::size_t n = own.cols();
  const std::size_t unknowns = m + 1;  // x, then the guaranteed level w

  // Inequalities g(z) >= 0: x_i >= 0, then (x^T own)_j - w >= 0.
  std::vector<RationalVector> ineq;
  for (std::size_t i = 0; i < m; ++i) {
    RationalVector r(unknowns, Rational(0));
    r[i] = 1;
    ineq.push_back(std::move(r));
  }
  for (std::size_t j = 0; j < n; ++j) {
    RationalVector r(unknowns, Rational(0));
    for (std::size_t i = 0; i < m; ++i) r[i] = own(i, j);
    r[m] = -1;
    ineq.push_back(std::move(r));
  }

  std::optional<MaximinResult> best;
  detail::for_each_combination(ineq.size(), m, [&](const std::vector<std::size_t>& tight) {
    RationalMatrix a(m + 1, unknowns);
    RationalVector b(m + 1, Rational(0));
    for (std::size_t i = 0; i < m; ++i) a(0, i) = 1;
    b[0] = 1;
    for (std::size_t t = 0; t < tight.size(); ++t)
      for (std::size_t c = 0; c < unknowns; ++c) a(t + 1, c) = ineq[tight[t]][c];
    const auto s = linalg::solve(a, b);
    if (s.kind != linalg::SolutionKind::Unique) return true;
    for (const auto& g : ineq) {
      Rational lhs(0);
      for (std::size_t c = 0; c < unknowns; ++c) lhs += g[c] * s.x[c];
      if (lhs < 0) return true;
    }
    const Rational& w = s.x[m];
    if (!best || w > best->guaranteed_value) {
      best = MaximinResult{MixedStrategy(RationalVector(s.x.begin(), s.x.begin() + static_cast<std::ptrdiff_t>(m))), w};
    }
    return true;
  });
  // The security polytope is nonempty and bounded, so a vertex always exists.
  return *best;
}

/// Worst-case expected payoff of `mix` for `player` over opposing pure strategies.
inline Rational security_level(const BimatrixGame& game, Player player, const MixedStrategy& mix) {
  const MixedStrategy& m = mix;
  RationalVector pay = player == Player::Row ? detail::opponent_payoffs(game.row_payoffs, m.probs())
                                             : detail::opponent_payoffs(game.col_payoffs.transposed(), m.probs());
  return *std::min_element(pay.begin(), pay.end());
}

}  // namespace poisonduel
