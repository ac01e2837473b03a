#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "mdist/constructions.h"
#include "mdist/errors.h"
#include "mdist/eval.h"
#include "mdist/search.h"
#include "oracle.h"

namespace mdist {
namespace {

const double kGoldenAlpha = 1 + std::sqrt(2.0);

TEST(Cost, TwoAgentsOnALine) {
  const LineInstance line({0, 1}, {0});
  EXPECT_EQ(cost(line, 0, Objective::kSocialCost), 1.0);
  EXPECT_EQ(cost(line, 0, Objective::kMaxCost), 1.0);
  EXPECT_THROW(cost(line, 1, Objective::kSocialCost), StructuralError);
}

TEST(Cost, CyclicInstance) {
  const auto c = build(ConstructionId::kCyclicSymmetric, {3, 2.0, 1e-6, 1e-6, 1});
  EXPECT_DOUBLE_EQ(cost(c.instance, 1, Objective::kSocialCost), 5.0);
  EXPECT_DOUBLE_EQ(cost(c.instance, 0, Objective::kSocialCost), 3.0);
}

TEST(Cost, CoLocatedAlternativeCostsNothing) {
  const LineInstance line({2, 2, 2}, {0, 2});
  EXPECT_EQ(cost(line, 1, Objective::kSocialCost), 0.0);
  EXPECT_EQ(cost(line, 1, Objective::kMaxCost), 0.0);
}

TEST(OptimalAlternative, Examples) {
  const LineInstance line({0, 10}, {0, 5});
  const auto sc = optimal_alternative(line, Objective::kSocialCost);
  EXPECT_EQ(sc.index, 0u);
  EXPECT_EQ(sc.cost, 10.0);
  const auto mc = optimal_alternative(line, Objective::kMaxCost);
  EXPECT_EQ(mc.index, 1u);
  EXPECT_EQ(mc.cost, 5.0);

  const LineInstance single({0.3, 0.9}, {0.5});
  EXPECT_EQ(optimal_alternative(single, Objective::kMaxCost).index, 0u);
}

TEST(OptimalAlternative, McGeneralI1) {
  const auto c = build(ConstructionId::kMCGeneralI1,
                       {2, kGoldenAlpha, 1e-6, 1e-6, 0});
  const auto mc = optimal_alternative(c.instance, Objective::kMaxCost);
  EXPECT_EQ(mc.index, 1u);
  EXPECT_NEAR(mc.cost, kGoldenAlpha + 1e-6, 1e-12);
}

TEST(OptimalAlternative, AgreesWithShuffledEnumeration) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 500; ++trial) {
    const auto instance = random_instance(
        trial % 2 ? Space::kLine : Space::kGeneral, 1 + trial % 8,
        1 + trial % 6, rng());
    const auto d = oracle::agent_alt(instance);
    for (bool social : {true, false}) {
      const auto objective =
          social ? Objective::kSocialCost : Objective::kMaxCost;
      EXPECT_NEAR(optimal_alternative(instance, objective).cost,
                  oracle::optimum(d, social, rng()), 1e-12);
    }
  }
}

TEST(Distortion, OmniscientIsExactlyOne) {
  std::mt19937_64 rng(13);
  const auto omniscient = make_mechanism(MechanismKind::kOmniscient, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const auto instance =
        random_instance(Space::kGeneral, 1 + trial % 8, 1 + trial % 6, rng());
    for (auto objective : {Objective::kSocialCost, Objective::kMaxCost}) {
      EXPECT_EQ(distortion(instance, omniscient, objective).ratio, 1.0);
    }
  }
}

TEST(Distortion, McGeneralI1ForcedWinner) {
  const double eps = 1e-6;
  const auto c = build(ConstructionId::kMCGeneralI1,
                       {2, kGoldenAlpha, eps, 1e-6, 0});
  const auto report = score_winner(c.instance, 0, Objective::kMaxCost);
  EXPECT_NEAR(report.winner_cost, 1 + 2 * kGoldenAlpha + eps, 1e-12);
  EXPECT_NEAR(report.optimal_cost, kGoldenAlpha + eps, 1e-12);
  EXPECT_NEAR(report.ratio, (1 + 2 * kGoldenAlpha + eps) / (kGoldenAlpha + eps),
              1e-12);
  EXPECT_NEAR(report.ratio, 2 + 1 / kGoldenAlpha, 1e-6);
}

TEST(Distortion, CyclicAtScale) {
  const auto c =
      build(ConstructionId::kCyclicSymmetric, {1000, 3.0, 1e-6, 1e-6, 0});
  const auto report =
      score_winner(c.instance, c.adversarial_winner, Objective::kSocialCost);
  EXPECT_NEAR(report.ratio, (1 + 999 * 3.0) / 1000, 1e-12);
}

TEST(Distortion, DegenerateOptimum) {
  const LineInstance line({1, 1}, {1, 2});
  const auto zero = score_winner(line, 1, Objective::kSocialCost);
  EXPECT_TRUE(zero.degenerate);
  EXPECT_TRUE(std::isinf(zero.ratio));
  const auto both = score_winner(line, 0, Objective::kMaxCost);
  EXPECT_TRUE(both.degenerate);
  EXPECT_EQ(both.ratio, 1.0);
}

TEST(Distortion, LineOnlyMechanismOnGeneralInstance) {
  const auto general = random_instance(Space::kGeneral, 3, 3, 1);
  EXPECT_THROW(
      distortion(general,
                 make_mechanism(MechanismKind::kMaxTASLeftmost, 2.0),
                 Objective::kMaxCost),
      UnsupportedError);
}

TEST(Distortion, CarriesTheMechanismTrace) {
  const auto line = random_instance(Space::kLine, 5, 3, 2);
  const auto report = distortion(
      line, make_mechanism(MechanismKind::kMinisumTAS, 2.0),
      Objective::kSocialCost);
  ASSERT_TRUE(report.trace);
  EXPECT_EQ(std::get<ScoreTrace>(*report.trace).scores.size(), 3u);
  EXPECT_GE(report.ratio, 1.0 - 1e-9);
}

TEST(McConditions, Examples) {
  // Both agents approve a0.
  const LineInstance shared({0.0, 0.4}, {0.2, 3.0});
  const auto all = check_mc_winner_conditions(shared, derive_tas(shared, 2.0), 0);
  EXPECT_TRUE(all.cond1);

  // Agent 0 at 0 (nearest a0 at 0.1) does not approve the MC optimum a1;
  // the optimum o = a1 at 0.6 serves agent 1 at 1.0.
  const LineInstance split({0.0, 1.0}, {0.1, 0.6});
  const auto tas = derive_tas(split, 2.0);
  EXPECT_EQ(tas.sets[0], (std::vector<std::size_t>{0}));
  EXPECT_EQ(optimal_alternative(split, Objective::kMaxCost).index, 1u);
  const auto c2 = check_mc_winner_conditions(split, tas, 0);
  EXPECT_FALSE(c2.cond1);
  EXPECT_TRUE(c2.cond2);

  // a2 is far from everyone and closest to no one.
  const LineInstance far({0.0, 1.0}, {0.0, 1.0, 9.0});
  const auto none = check_mc_winner_conditions(far, derive_tas(far, 2.0), 2);
  EXPECT_FALSE(none.cond1);
  EXPECT_FALSE(none.cond2);
}

TEST(McConditions, ImplyTheirBoundsOnRandomInstances) {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> alphas(1.0, 4.0);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto instance = random_instance(
        trial % 2 ? Space::kLine : Space::kGeneral, 1 + trial % 7,
        1 + trial % 6, rng());
    const double alpha = alphas(rng);
    const auto tas = derive_tas(instance, alpha);
    const double best = optimal_alternative(instance, Objective::kMaxCost).cost;
    for (std::size_t w = 0; w < n_alternatives(instance); ++w) {
      const auto c = check_mc_winner_conditions(instance, tas, w);
      const double mc = cost(instance, w, Objective::kMaxCost);
      if (c.cond1) EXPECT_LE(mc, alpha * best + 1e-9);
      if (c.cond2) EXPECT_LE(mc, (2 + 1 / alpha) * best + 1e-9);
    }
  }
}

TEST(IntervalWinner, Examples) {
  const LineInstance line({0.0, 1.0}, {0.5, 2.0});
  EXPECT_TRUE(interval_winner_check(line, 0));
  EXPECT_LE(score_winner(line, 0, Objective::kMaxCost).ratio, 2.0);
  EXPECT_FALSE(interval_winner_check(line, 1));
  const LineInstance point({0.3, 0.3}, {0.3, 0.9});
  EXPECT_TRUE(interval_winner_check(point, 0));
}

TEST(ProvenUpperBound, Table) {
  auto bound = [](MechanismKind kind, double alpha, Objective o, Space s,
                  std::size_t n = 3) {
    return proven_upper_bound(make_mechanism(kind, alpha), o, s, n);
  };
  const auto sc = Objective::kSocialCost;
  const auto mc = Objective::kMaxCost;
  const auto line = Space::kLine;
  const auto general = Space::kGeneral;
  EXPECT_NEAR(*bound(MechanismKind::kMinisumTAS, kGoldenAlpha, sc, general),
              kGoldenAlpha, 1e-12);
  EXPECT_NEAR(*bound(MechanismKind::kMinisumTAS, 2.0, sc, line), 2.0, 1e-12);
  EXPECT_NEAR(*bound(MechanismKind::kMinisumTAS, 1.5, sc, general),
              2 + 1 / 1.5, 1e-12);
  EXPECT_NEAR(*bound(MechanismKind::kEliminationWeightedMajority,
                     kGoldenAlpha, sc, line),
              2 * std::sqrt(2.0) - 1, 1e-12);
  EXPECT_FALSE(bound(MechanismKind::kEliminationWeightedMajority,
                     kGoldenAlpha, mc, line));
  EXPECT_NEAR(*bound(MechanismKind::kAnyApproved, 3.0, mc, general), 5.0,
              1e-12);
  EXPECT_NEAR(*bound(MechanismKind::kMaxTASLeftmost, kGoldenAlpha, mc, line),
              kGoldenAlpha, 1e-12);
  EXPECT_FALSE(bound(MechanismKind::kMaxTASLeftmost, kGoldenAlpha, mc,
                     general));
  EXPECT_EQ(*bound(MechanismKind::kTopChoiceDictator, 1.0, sc, line, 7), 15.0);
  EXPECT_EQ(*bound(MechanismKind::kTopChoiceDictator, 1.0, mc, line, 7), 3.0);
  EXPECT_EQ(*bound(MechanismKind::kOmniscient, 1.0, sc, general), 1.0);
}

TEST(Names, ObjectiveAndSpace) {
  EXPECT_EQ(parse_objective("sc"), Objective::kSocialCost);
  EXPECT_EQ(parse_objective("MaxCost"), Objective::kMaxCost);
  EXPECT_FALSE(parse_objective("avg"));
  EXPECT_EQ(parse_space(space_name(Space::kGeneral)), Space::kGeneral);
}

}  // namespace
}  // namespace mdist
