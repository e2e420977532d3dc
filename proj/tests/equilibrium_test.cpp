#include <poisonduel/equilibrium.hpp>

#include "reference_games.hpp"
#include "grid_oracle.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

namespace poisonduel {
namespace {

using testing::magician_lead_game;
using testing::average_game;
using testing::mix;

const MixedStrategy kMaximinMix = mix({"0", "1/4", "1/2", "1/4"});

TEST(ExpectedPayoffs, UniformOnAverageGame) {
  EXPECT_EQ(expected_payoffs(average_game(), MixedStrategy::uniform(4), MixedStrategy::uniform(4)),
            (ExpectedPayoffs{Rational(1, 4), Rational(1, 4)}));
}

TEST(ExpectedPayoffs, MixedEquilibriumValues) {
  EXPECT_EQ(expected_payoffs(average_game(), mix({"0", "1/2", "1/2", "0"}), mix({"1/3", "0", "0", "2/3"})),
            (ExpectedPayoffs{Rational(1, 3), Rational(1, 2)}));
}

TEST(ExpectedPayoffs, PointMassesPickEntries) {
  const auto g = average_game();
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      const auto p = expected_payoffs(g, MixedStrategy::pure(4, i), MixedStrategy::pure(4, j));
      EXPECT_EQ(p.row, g.row_payoffs(i, j));
      EXPECT_EQ(p.col, g.col_payoffs(i, j));
    }
  EXPECT_THROW(expected_payoffs(g, MixedStrategy::uniform(3), MixedStrategy::uniform(4)), InputError);
}

TEST(BestResponse, ColumnAgainstMaximinMixIsPureA) {
  // Column payoffs against (0, 1/4, 1/2, 1/4), evaluated by hand from the
  // Physician's matrix: A gets x_C, B gets x_A, C gets (x_C + x_D)/2, D gets x_B.
  EXPECT_EQ(pure_payoffs(average_game(), Player::Column, kMaximinMix),
            (RationalVector{Rational(1, 2), Rational(0), Rational(3, 8), Rational(1, 4)}));
  const auto br = best_response(average_game(), Player::Column, kMaximinMix);
  EXPECT_EQ(br.value, Rational(1, 2));
  EXPECT_EQ(br.argmax, (std::vector<std::size_t>{0}));
}

TEST(BestResponse, RowAgainstADMixKeepsTies) {
  const auto br = best_response(average_game(), Player::Row, mix({"1/3", "0", "0", "2/3"}));
  EXPECT_EQ(br.value, Rational(1, 3));
  EXPECT_EQ(br.argmax, (std::vector<std::size_t>{1, 2}));
}

TEST(BestResponse, PointMassColumnGivesColumnMaximum) {
  const auto g = average_game();
  for (std::size_t j = 0; j < 4; ++j) {
    Rational best = g.row_payoffs(0, j);
    for (std::size_t i = 1; i < 4; ++i) best = std::max(best, g.row_payoffs(i, j));
    EXPECT_EQ(best_response(g, Player::Row, MixedStrategy::pure(4, j)).value, best);
  }
}

TEST(SupportEnumeration, AverageGameHasExactlyThreeIsolatedEquilibria) {
  const auto r = support_enumeration(average_game());
  EXPECT_FALSE(r.degenerate());
  ASSERT_EQ(r.equilibria.size(), 3u);
  const std::vector<NashEquilibrium> expected{
      {mix({"1/3", "0", "0", "2/3"}), mix({"0", "1/2", "1/2", "0"}), Rational(1, 2), Rational(1, 3)},
      {mix({"0", "1/2", "1/2", "0"}), mix({"1/3", "0", "0", "2/3"}), Rational(1, 3), Rational(1, 2)},
      {MixedStrategy::uniform(4), MixedStrategy::uniform(4), Rational(1, 4), Rational(1, 4)},
  };
  EXPECT_EQ(r.equilibria, expected);
}

TEST(SupportEnumeration, MatchingPennies) {
  using testing::table;
  const BimatrixGame g({"H", "T"}, {"H", "T"}, table({{"1", "0"}, {"0", "1"}}), table({{"0", "1"}, {"1", "0"}}));
  const auto r = support_enumeration(g);
  ASSERT_EQ(r.equilibria.size(), 1u);
  EXPECT_EQ(r.equilibria[0].row_mix, MixedStrategy::uniform(2));
  EXPECT_EQ(r.equilibria[0].col_mix, MixedStrategy::uniform(2));
  EXPECT_EQ(r.equilibria[0].row_value, Rational(1, 2));
}

TEST(SupportEnumeration, StrictlyDominantStrategies) {
  using testing::table;
  // Prisoner's dilemma: defect (index 1) strictly dominates for both.
  const BimatrixGame g({"C", "D"}, {"C", "D"}, table({{"3", "0"}, {"5", "1"}}), table({{"3", "5"}, {"0", "1"}}));
  const auto r = support_enumeration(g);
  ASSERT_EQ(r.equilibria.size(), 1u);
  EXPECT_EQ(r.equilibria[0].row_mix, MixedStrategy::pure(2, 1));
  EXPECT_EQ(r.equilibria[0].col_mix, MixedStrategy::pure(2, 1));
  EXPECT_TRUE(verify_equilibrium(g, r.equilibria[0]));
  EXPECT_FALSE(r.degenerate());
}

// Extreme equilibria of the MPMP game computed offline with an exact
// labeled-polytope vertex enumeration (independent of support enumeration).
TEST(SupportEnumeration, MagicianLeadGameIsDegenerateAndMatchesVertexOracle) {
  const auto g = magician_lead_game();
  const auto r = support_enumeration(g);
  EXPECT_TRUE(r.degenerate());
  const std::vector<NashEquilibrium> isolated{
      {MixedStrategy::pure(4, 3), MixedStrategy::pure(4, 1), Rational(1), Rational(0)},
      {mix({"0", "1/2", "1/2", "0"}), mix({"1/2", "0", "0", "1/2"}), Rational(1, 2), Rational(1, 2)},
  };
  EXPECT_EQ(r.equilibria, isolated);

  std::set<std::pair<RationalVector, RationalVector>> extremes;
  for (const auto& e : r.equilibria) extremes.insert({e.row_mix.probs(), e.col_mix.probs()});
  for (const auto& f : r.degenerate_families)
    for (const auto& x : f.row_vertices)
      for (const auto& y : f.col_vertices) {
        EXPECT_TRUE(verify_equilibrium(g, {x.mix, y.mix, y.induced_value, x.induced_value}));
        extremes.insert({x.mix.probs(), y.mix.probs()});
      }
  const auto D = mix({"0", "0", "0", "1"}).probs();
  const std::set<std::pair<RationalVector, RationalVector>> oracle{
      {D, mix({"0", "1", "0", "0"}).probs()},
      {D, mix({"0", "1/2", "0", "1/2"}).probs()},
      {D, mix({"0", "1/2", "1/2", "0"}).probs()},
      {D, mix({"1/2", "1/2", "0", "0"}).probs()},
      {D, mix({"1/3", "1/3", "0", "1/3"}).probs()},
      {D, mix({"1/3", "1/3", "1/3", "0"}).probs()},
      {mix({"0", "1/2", "1/2", "0"}).probs(), mix({"1/2", "0", "0", "1/2"}).probs()},
  };
  EXPECT_EQ(extremes, oracle);
}

TEST(SupportEnumeration, RefusesOversizedGames) {
  RationalMatrix z(9, 2);
  std::vector<std::string> rows(9, "r"), cols{"a", "b"};
  EXPECT_THROW(support_enumeration(BimatrixGame(rows, cols, z, z), {8}), CapabilityError);
}

TEST(SupportEnumeration, OneByOne) {
  using testing::table;
  const BimatrixGame g({"only"}, {"only"}, table({{"2/3"}}), table({{"1/5"}}));
  const auto r = support_enumeration(g);
  ASSERT_EQ(r.equilibria.size(), 1u);
  EXPECT_EQ(r.equilibria[0].row_value, Rational(2, 3));
  EXPECT_EQ(r.equilibria[0].col_value, Rational(1, 5));
}

TEST(VerifyEquilibrium, AverageGameEquilibriaPass) {
  for (const auto& e : support_enumeration(average_game()).equilibria) EXPECT_TRUE(verify_equilibrium(average_game(), e));
}

TEST(VerifyEquilibrium, MaximinAgainstUniformFails) {
  const auto p = expected_payoffs(average_game(), kMaximinMix, MixedStrategy::uniform(4));
  EXPECT_FALSE(verify_equilibrium(average_game(), {kMaximinMix, MixedStrategy::uniform(4), p.row, p.col}));
}

TEST(VerifyEquilibrium, WrongValuesFail) {
  EXPECT_FALSE(verify_equilibrium(
      average_game(), {MixedStrategy::uniform(4), MixedStrategy::uniform(4), Rational(1, 3), Rational(1, 4)}));
}

TEST(Maximin, AverageGameBothPlayers) {
  for (Player p : {Player::Row, Player::Column}) {
    const auto m = maximin(average_game(), p);
    EXPECT_EQ(m.guaranteed_value, Rational(1, 4));
    EXPECT_EQ(m.strategy, kMaximinMix);
    EXPECT_EQ(security_level(average_game(), p, m.strategy), m.guaranteed_value);
  }
}

TEST(Maximin, OneByOne) {
  using testing::table;
  const auto m = maximin(BimatrixGame({"x"}, {"y"}, table({{"3/7"}}), table({{"0"}})), Player::Row);
  EXPECT_EQ(m.guaranteed_value, Rational(3, 7));
  EXPECT_EQ(m.strategy, MixedStrategy::pure(1, 0));
}

TEST(Maximin, NotAboveAnyEquilibriumPayoffOnAverageGame) {
  const auto g = average_game();
  const auto row = maximin(g, Player::Row).guaranteed_value;
  const auto col = maximin(g, Player::Column).guaranteed_value;
  for (const auto& e : support_enumeration(g).equilibria) {
    EXPECT_LE(row, e.row_value);
    EXPECT_LE(col, e.col_value);
  }
}

class RandomGames : public ::testing::TestWithParam<std::size_t> {};

TEST_P(RandomGames, EquilibriaVerifyAndAgreeWithGridOracle) {
  std::mt19937_64 gen(1000 + GetParam());
  for (int trial = 0; trial < 25; ++trial) {
    const auto g = testing::random_game(gen, GetParam(), GetParam());
    const auto r = support_enumeration(g);
    EXPECT_TRUE(!r.equilibria.empty() || r.degenerate());
    for (const auto& e : r.equilibria) EXPECT_TRUE(verify_equilibrium(g, e));
    for (const auto& f : r.degenerate_families)
      for (const auto& x : f.row_vertices)
        for (const auto& y : f.col_vertices)
          EXPECT_TRUE(verify_equilibrium(g, {x.mix, y.mix, y.induced_value, x.induced_value}));
    const auto cmp = testing::compare_with_grid(g, r);
    EXPECT_TRUE(cmp.ok) << cmp.detail;
  }
}

TEST_P(RandomGames, MaximinGuaranteeIsExact) {
  std::mt19937_64 gen(2000 + GetParam());
  for (int trial = 0; trial < 25; ++trial) {
    const auto g = testing::random_game(gen, GetParam(), GetParam());
    for (Player p : {Player::Row, Player::Column}) {
      const auto m = maximin(g, p);
      EXPECT_EQ(security_level(g, p, m.strategy), m.guaranteed_value);
      // No grid mix guarantees more.
      for (const auto& x : testing::grid_points(p == Player::Row ? g.rows() : g.cols())) {
        ASSERT_LE(security_level(g, p, x), m.guaranteed_value);
      }
    }
  }
}

TEST_P(RandomGames, ScalingOnePlayersPayoffsScalesOnlyThatPlayersValues) {
  std::mt19937_64 gen(3000 + GetParam());
  const Rational factor(7, 3);
  for (int trial = 0; trial < 15; ++trial) {
    const auto g = testing::random_game(gen, GetParam(), GetParam());
    auto scaled = g;
    for (std::size_t i = 0; i < g.rows(); ++i)
      for (std::size_t j = 0; j < g.cols(); ++j) scaled.row_payoffs(i, j) *= factor;
    const auto a = support_enumeration(g);
    const auto b = support_enumeration(scaled);
    ASSERT_EQ(a.equilibria.size(), b.equilibria.size());
    ASSERT_EQ(a.degenerate_families.size(), b.degenerate_families.size());
    for (std::size_t e = 0; e < a.equilibria.size(); ++e) {
      EXPECT_EQ(b.equilibria[e].row_mix, a.equilibria[e].row_mix);
      EXPECT_EQ(b.equilibria[e].col_mix, a.equilibria[e].col_mix);
      EXPECT_EQ(b.equilibria[e].row_value, factor * a.equilibria[e].row_value);
      EXPECT_EQ(b.equilibria[e].col_value, a.equilibria[e].col_value);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Sizes, RandomGames, ::testing::Values(2u, 3u));

TEST(MixedStrategy, Validation) {
  EXPECT_THROW(MixedStrategy(RationalVector{Rational(1, 2)}), InputError);
  EXPECT_THROW(MixedStrategy(RationalVector{Rational(3, 2), Rational(-1, 2)}), InputError);
  EXPECT_THROW(MixedStrategy(RationalVector{}), InputError);
  EXPECT_EQ(mix({"0", "1/2", "1/2"}).support(), (std::vector<std::size_t>{1, 2}));
}

}  // namespace
}  // namespace poisonduel
