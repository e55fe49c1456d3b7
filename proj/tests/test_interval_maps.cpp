#include <gtest/gtest.h>

#include <cmath>

#include "hup/interval_maps.hpp"
#include "hup/transfer_ops.hpp"

using namespace hup;

TEST(Fractional, Ranges) {
  EXPECT_DOUBLE_EQ(frac1(2.25), 0.25);
  EXPECT_DOUBLE_EQ(frac1(-0.25), 0.75);
  EXPECT_DOUBLE_EQ(frac1(3.0), 0.0);
  EXPECT_DOUBLE_EQ(frac2(2.5), 0.5);
  EXPECT_DOUBLE_EQ(frac2(1.0), 1.0);
  EXPECT_DOUBLE_EQ(frac2(-1.0), 1.0);
  EXPECT_DOUBLE_EQ(frac2(-2.5), -0.5);
  for (double x = -7.3; x < 7.3; x += 0.173) {
    const double y1 = frac1(x), y2 = frac2(x);
    EXPECT_TRUE(y1 >= 0 && y1 < 1);
    EXPECT_TRUE(y2 > -1 && y2 <= 1);
    EXPECT_NEAR(std::remainder(x - y2, 2.0), 0.0, 1e-12);
  }
}

TEST(Maps, ApplyAndOrbit) {
  EXPECT_DOUBLE_EQ(apply_map(MapParams::sigma(0.5), 0.3), frac1(0.5 / 0.3));
  EXPECT_DOUBLE_EQ(apply_map(MapParams::tau(0.5), 0.3), frac2(-0.5 / 0.3));
  EXPECT_THROW(apply_map(MapParams::tau(0.5), 0.0), InvalidInput);
  auto o = orbit(MapParams::sigma(1.0), 0.6180339887498949, 5);
  ASSERT_EQ(o.size(), 6u);
  // The golden mean is a fixed point of the Gauss map.
  for (double v : o) EXPECT_NEAR(v, 0.6180339887498949, 1e-10);
  // 0.5 → frac(1/0.5) = 0 and the orbit stops.
  EXPECT_THROW(orbit(MapParams::sigma(1.0), 0.5, 3), OrbitHitsZero);
  EXPECT_THROW(MapParams::tau(1.5).validate(), InvalidInput);
}

TEST(Wandering, PrefixMembership) {
  WanderingQuery q{MapParams::tau(0.5), 2};
  EXPECT_FALSE(in_wandering_prefix(q, 0.7));
  // -0.5/0.9 ∈ [-0.5, 0.5]? -0.555..., no.
  EXPECT_FALSE(in_wandering_prefix(q, 0.9));
  // -0.5/0.45 = -1.111 → 0.888, outside.
  EXPECT_FALSE(in_wandering_prefix(q, 0.45));
  // -0.5/0.4 = -1.25 → 0.75, outside; -0.5/0.3 = -1.667 → 0.333, inside.
  EXPECT_TRUE(in_wandering_prefix(q, 0.3));
}

struct WanderingCase {
  MapParams p;
  int depth;
  double exact;
};

TEST(Wandering, CylinderIntegralMatchesOracle) {
  const WanderingCase cases[] = {
      {MapParams::tau(0.5), 1, 1.09861228866810969},  {MapParams::tau(0.5), 2, 0.451582705289454865},
      {MapParams::sigma(0.5), 1, 0.405465108108164382}, {MapParams::sigma(0.5), 2, 0.241564475270490445},
      {MapParams::tau(0.9), 1, 2.94443897916644046},  {MapParams::tau(0.9), 2, 2.21372837581112263},
      {MapParams::sigma(0.9), 1, 0.641853886172394776}, {MapParams::sigma(0.9), 2, 0.594671343833913501},
  };
  for (const auto& c : cases) {
    WanderingQuery q{c.p, c.depth};
    const Weight w = c.p.family == Family::TauGauss ? Weight::Kappa1 : Weight::Lambda1;
    auto est = wandering_integral(q, [&](double a, double b) { return weight_mass(w, a, b); });
    EXPECT_NEAR(est.value, c.exact, 1e-6) << c.p.param << " N=" << c.depth;
    EXPECT_LE(est.value, wandering_bound(q));
  }
}

TEST(Wandering, OrbitRouteMatchesDuality) {
  for (auto p : {MapParams::tau(0.5), MapParams::sigma(0.5)}) {
    WanderingQuery q{p, 4};
    const double orbits = wandering_measure_orbits(q).value;
    const double dual = wandering_measure_duality(q);
    EXPECT_NEAR(orbits, dual, 1e-6 * std::max(1.0, dual));
    EXPECT_LE(orbits, wandering_bound(q));
  }
}

TEST(Wandering, BoundNeedsStrictParameter) {
  EXPECT_THROW(wandering_bound(WanderingQuery{MapParams::sigma(1.0), 2}), InvalidInput);
  EXPECT_NEAR(wandering_bound(WanderingQuery{MapParams::tau(0.5), 3}), 1.0, 1e-15);
  EXPECT_THROW(wandering_integral(WanderingQuery{MapParams::tau(0.5), 0}, [](double, double) { return 0.0; }),
               InvalidInput);
}
