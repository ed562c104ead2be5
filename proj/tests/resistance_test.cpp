#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "erm/error.hpp"
#include "erm/graph.hpp"
#include "erm/resistance.hpp"
#include "oracles.hpp"

namespace erm {
namespace {

using testing::rel_diff;

WeightedGraph unit_cycle(std::size_t n) { return cycle(std::vector<double>(n, 1.0)); }

TEST(EffectiveResistance, UnitTriangle) {
  const auto r = effective_resistance(unit_cycle(3), 0, 1);
  EXPECT_NEAR(r.value, 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(r.energy_min, 1.5, 1e-15);
  EXPECT_FALSE(r.ill_conditioned);
}

TEST(EffectiveResistance, SingleResistor) {
  const auto r = effective_resistance(build_graph(2, {{0, 1, 4.0}}), 0, 1);
  EXPECT_EQ(r.value, 0.25);
  EXPECT_EQ(r.energy_min, 4.0);
}

TEST(EffectiveResistance, OppositeCornersOfUnitSquare) {
  EXPECT_NEAR(effective_resistance(unit_cycle(4), 0, 2).value, 1.0, 1e-15);
}

TEST(EffectiveResistance, ThreeCycleClosedForms) {
  const double c01 = 0.7, c02 = 2.3, c12 = 0.11;
  const auto g = build_graph(3, {{0, 1, c01}, {0, 2, c02}, {1, 2, c12}});
  const double s = c01 * c02 + c01 * c12 + c02 * c12;
  EXPECT_NEAR(effective_resistance(g, 0, 1).value, (c02 + c12) / s, 1e-14);
  EXPECT_NEAR(effective_resistance(g, 0, 2).value, (c01 + c12) / s, 1e-14);
  EXPECT_NEAR(effective_resistance(g, 1, 2).value, (c01 + c02) / s, 1e-14);
}

TEST(EffectiveResistance, SymmetricInPair) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 100; ++t) {
    const auto g = testing::random_connected_graph(rng, 3 + t % 6);
    const auto a = effective_resistance(g, 0, 2).value;
    const auto b = effective_resistance(g, 2, 0).value;
    ASSERT_LE(rel_diff(a, b), 1e-12);
  }
}

TEST(EffectiveResistance, Errors) {
  const auto disconnected = build_graph(4, {{0, 1, 1.0}, {2, 3, 1.0}});
  EXPECT_THROW(effective_resistance(disconnected, 0, 2), DisconnectedGraph);
  EXPECT_THROW(effective_resistance(disconnected, 0, 1), DisconnectedGraph);
  EXPECT_THROW(effective_resistance_oracle(disconnected, 0, 1), DisconnectedGraph);
  EXPECT_THROW(effective_resistance(unit_cycle(3), 1, 1), InvalidArgument);
  EXPECT_THROW(effective_resistance(unit_cycle(3), 0, 3), InvalidArgument);
  EXPECT_THROW(global_resistance(disconnected), DisconnectedGraph);
  EXPECT_THROW(global_resistance(build_graph(2, {})), InvalidArgument);
}

TEST(EffectiveResistance, FlagsIllConditionedInterior) {
  // Two parallel two-edge routes whose interior degrees differ by 1e16; the
  // interior block is diagonal so the value itself stays accurate.
  const auto g = build_graph(4, {{0, 2, 1e8}, {1, 2, 1e8}, {0, 3, 1e-8}, {1, 3, 1e-8}});
  const auto r = effective_resistance(g, 0, 1);
  EXPECT_TRUE(r.ill_conditioned);
  EXPECT_GT(r.pivot_ratio, kIllConditionedPivotRatio);
  EXPECT_LE(rel_diff(r.value, 1.0 / (1.0 / 2e-8 + 1.0 / 2e8)), 1e-12);
  EXPECT_FALSE(effective_resistance(unit_cycle(6), 0, 1).ill_conditioned);
}

TEST(Oracle, Examples) {
  EXPECT_NEAR(effective_resistance_oracle(unit_cycle(3), 0, 1), 2.0 / 3.0, 1e-15);
  const auto path = build_graph(3, {{0, 1, 1.0}, {1, 2, 1.0}});
  EXPECT_NEAR(effective_resistance_oracle(path, 0, 2), 2.0, 1e-15);
  EXPECT_NEAR(effective_resistance(path, 0, 2).value, 2.0, 1e-15);
}

TEST(Oracle, SchurRouteMatchesGroundedSolveAndPseudoInverse) {
  std::mt19937_64 rng(32);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 3 + t % 8;
    const auto g = testing::random_connected_graph(rng, n);
    const std::size_t i = t % n, j = (t / n + 1 + i) % n;
    if (i == j) continue;
    const auto schur = effective_resistance(g, i, j);
    const double grounded = effective_resistance_oracle(g, i, j);
    ASSERT_LE(rel_diff(schur.value, grounded), 1e-10) << "graph " << t;
    ASSERT_LE(rel_diff(schur.value, static_cast<double>(testing::pinv_resistance(g, i, j))), 1e-9);
    ASSERT_LE(std::abs(schur.value * schur.energy_min - 1.0), 1e-12);
  }
}

TEST(GlobalResistance, UnitCycles) {
  EXPECT_NEAR(global_resistance(unit_cycle(3)), 2.0, 1e-14);
  EXPECT_NEAR(global_resistance(unit_cycle(4)), 3.0, 1e-14);
  for (std::size_t n = 3; n <= 20; ++n) {
    EXPECT_NEAR(global_resistance(unit_cycle(n)), static_cast<double>(n - 1), 1e-12) << n;
    // each edge: (n-1)/n
    EXPECT_NEAR(effective_resistance(unit_cycle(n), 0, 1).value, (n - 1.0) / n, 1e-14);
  }
}

TEST(GlobalResistance, OnlyAdjacentPairsCount) {
  // Path 0-1-2: rho = 1 + 1, the non-adjacent d_r(0, 2) = 2 is not included.
  const auto path = build_graph(3, {{0, 1, 1.0}, {1, 2, 1.0}});
  EXPECT_NEAR(global_resistance(path), 2.0, 1e-15);
}

TEST(ThreeCycleRho, Examples) {
  EXPECT_EQ(three_cycle_rho(1, 1, 1), 2.0);
  EXPECT_NEAR(three_cycle_rho(0.375, 1.5, 1.5), 2.0, 1e-15);
  for (double alpha : {1e-3, 0.5, 7.0, 1e3}) {
    EXPECT_NEAR(three_cycle_rho(alpha, alpha, alpha), 2.0 / alpha, 1e-15 * 2.0 / alpha);
  }
  EXPECT_THROW(three_cycle_rho(1, 0, 1), InvalidArgument);
  EXPECT_THROW(three_cycle_rho(1, 1, -2), InvalidArgument);
}

TEST(ThreeCycleRho, DecreasingInEachConductance) {
  const double grid[] = {0.01, 0.1, 0.5, 1.0, 2.0, 10.0, 100.0};
  for (double a : grid) {
    for (double b : grid) {
      double prev = three_cycle_rho(a, b, grid[0]);
      for (double z = grid[0] * 1.1; z < 200.0; z *= 1.1) {
        const double cur = three_cycle_rho(a, b, z);
        ASSERT_LT(cur - prev, 0.0) << a << ' ' << b << ' ' << z;
        // symmetric in which slot varies
        ASSERT_NEAR(three_cycle_rho(z, a, b), cur, 1e-14 * cur);
        ASSERT_NEAR(three_cycle_rho(a, z, b), cur, 1e-14 * cur);
        prev = cur;
      }
    }
  }
}

TEST(CycleRhoClosedForm, Examples) {
  const double three[] = {1, 1, 1};
  EXPECT_EQ(cycle_rho_closed_form(three), 2.0);
  const double four[] = {1, 1, 1, 1};
  EXPECT_EQ(cycle_rho_closed_form(four), 3.0);
  const double two[] = {1, 1};
  EXPECT_THROW(cycle_rho_closed_form(two), InvalidArgument);
  const double bad[] = {1, 0, 1};
  EXPECT_THROW(cycle_rho_closed_form(bad), InvalidArgument);
}

TEST(CycleRhoClosedForm, MatchesSchurRouteAndSeriesParallel) {
  std::mt19937_64 rng(33);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 3 + t % 10;
    const auto c = testing::random_conductances(rng, n, 1e-2, 1e2);
    const auto g = cycle(c);
    const double closed = cycle_rho_closed_form(c);
    ASSERT_LE(rel_diff(closed, global_resistance(g)), 1e-10);
    long double sp = 0.0L;
    for (std::size_t k = 0; k < n; ++k) sp += testing::series_parallel_edge(c, k);
    ASSERT_LE(rel_diff(closed, static_cast<double>(sp)), 1e-12);
    if (n == 3) {
      ASSERT_LE(rel_diff(closed, three_cycle_rho(c[0], c[2], c[1])), 1e-13);
    }
    if (n == 4) {
      ASSERT_LE(rel_diff(closed, four_cycle_rho(c[0], c[1], c[2], c[3])), 1e-13);
    }
  }
}

TEST(FourCycleRho, UnitAndAsymmetricTerms) {
  EXPECT_EQ(four_cycle_rho(1, 1, 1, 1), 3.0);
  // An asymmetric point where the printed denominator (c12 c23 c30 twice,
  // c01 c23 c30 missing) would differ from the true value.
  const double c[] = {0.5, 2.0, 3.0, 0.25};
  const double truth = global_resistance(cycle(c));
  EXPECT_NEAR(four_cycle_rho(c[0], c[1], c[2], c[3]), truth, 1e-13);
  const double pairs = c[0] * c[1] + c[0] * c[2] + c[0] * c[3] + c[1] * c[2] + c[1] * c[3] + c[2] * c[3];
  const double printed = 2 * pairs /
                         (c[0] * c[1] * c[2] + c[0] * c[1] * c[3] + c[1] * c[2] * c[3] +
                          c[1] * c[2] * c[3]);
  EXPECT_GT(std::abs(printed - truth), 1e-3);
}

TEST(Scaling, GlobalResistanceInverselyProportional) {
  std::mt19937_64 rng(34);
  for (int t = 0; t < 100; ++t) {
    const auto g = testing::random_connected_graph(rng, 3 + t % 8);
    const double rho = global_resistance(g);
    for (double alpha : {1e-3, 0.37, 1.0, 5.0, 1e3}) {
      ASSERT_LE(rel_diff(global_resistance(scale(g, alpha)) * alpha, rho), 1e-10);
    }
  }
}

TEST(Foster, WeightedResistanceSumIsNMinusOne) {
  std::mt19937_64 rng(35);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 2 + t % 10;
    const auto g = testing::random_connected_graph(rng, n);
    double s = 0.0;
    for (const auto& e : g.edges()) s += e.conductance * effective_resistance(g, e.i, e.j).value;
    ASSERT_NEAR(s, n - 1.0, 1e-9);
  }
}

TEST(Shorting, AdjacentResistanceAtMostDirectResistor) {
  std::mt19937_64 rng(36);
  for (int t = 0; t < 200; ++t) {
    const auto g = testing::random_connected_graph(rng, 2 + t % 9);
    for (const auto& e : g.edges()) {
      const double d = effective_resistance(g, e.i, e.j).value;
      ASSERT_LE(d, 1.0 / e.conductance * (1 + 1e-10));
    }
  }
}

TEST(MetricCheck, Examples) {
  EXPECT_TRUE(metric_check(unit_cycle(3)));
  const auto star = build_graph(5, {{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}, {0, 4, 1.0}});
  EXPECT_TRUE(metric_check(star));
  EXPECT_NEAR(effective_resistance(star, 1, 2).value, 2.0, 1e-15);
  EXPECT_NEAR(effective_resistance(star, 0, 3).value, 1.0, 1e-15);
  EXPECT_THROW(metric_check(build_graph(4, {{0, 1, 1.0}, {2, 3, 1.0}})), DisconnectedGraph);

  std::mt19937_64 rng(37);
  for (int t = 0; t < 60; ++t) {
    EXPECT_TRUE(metric_check(testing::random_connected_graph(rng, 2 + t % 7)));
  }
}

}  // namespace
}  // namespace erm
