#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hup/kg_fourier.hpp"

using namespace hup;
constexpr double pi = std::numbers::pi;

TEST(Densities, CriticalNormalization) {
  EXPECT_NEAR(critical_f0(0.5, 2.0), 1.0 / 6.0, 1e-15);
  for (double t : {0.2, 0.9, 1.7, 6.0}) EXPECT_NEAR(4 * critical_f0(t, 3.0), f0_normalized(1.5 * t), 1e-15) << t;
  EXPECT_THROW(critical_f0(0.0, 2.0), InvalidInput);
  EXPECT_THROW(critical_f0(1.0, -1.0), InvalidInput);
  // ∫_0^∞ f0 = 0.
  EXPECT_NEAR(line_integral(f0_line_function()), 0.0, 1e-9);
}

TEST(Closed, CrossTransform) {
  auto v = cross_ft_closed_form(1.0);
  EXPECT_NEAR(v.real(), 0.147335824092850972, 1e-12);
  EXPECT_NEAR(v.imag(), 0.562281450375139102, 1e-12);
  EXPECT_NEAR(std::abs(cross_ft_closed_form(2.0)), 0.0, 1e-12);
  EXPECT_THROW(cross_ft_nonvanishing(4.0), InvalidInput);
  auto o = osc_halfline_closed(0.5);
  EXPECT_NEAR(o.real(), -0.472000651439568651, 1e-13);
  EXPECT_NEAR(o.imag(), 0.200034158640408139, 1e-13);
}

TEST(Closed, NielsenSpiralStaysAwayFromZero) {
  double m = 1e300;
  for (int k = 1; k <= 100; ++k) m = std::min(m, std::abs(nielsen_spiral(0.1 * k)));
  EXPECT_GT(m, 1e-3);
  EXPECT_THROW(nielsen_spiral(0.0), InvalidInput);
}

TEST(Measure, QuadratureMatchesClosedForm) {
  auto mu = f0_measure();
  for (double x : {0.5, 1.0, 2.5, -1.3}) {
    const cplx q = hyperbola_ft(mu, x, 0.0), e = cross_ft_closed_form(x);
    EXPECT_NEAR(std::abs(q - e), 0.0, 1e-4) << x;
  }
}

TEST(Measure, LatticeVanishing) {
  LatticeCross lc;
  lc.m_max = 3;
  lc.n_max = 3;
  auto s = lattice_residual_scan(f0_measure(), lc);
  EXPECT_EQ(s.entries.size(), 13u);
  EXPECT_EQ(s.failures, 0);
  EXPECT_LE(s.max_residual, 1e-4);
  auto P = LineFunction::decaying([](double t) { return t > 0 ? 1 / (pi * (1 + t * t)) : 0.0; }, Decay::InverseSquare,
                                  {0.0});
  EXPECT_GE(lattice_residual_scan(HyperbolaMeasure{P}, lc).max_residual, 1e-2);
}

TEST(Measure, Validation) {
  HyperbolaMeasure bad{f0_line_function(), -1.0};
  EXPECT_THROW(hyperbola_ft(bad, 1.0, 1.0), InvalidInput);
  LatticeCross lc;
  lc.m_max = -1;
  EXPECT_THROW(lattice_residual_scan(f0_measure(), lc), InvalidInput);
}

TEST(Lattice, Quadrants) {
  EXPECT_EQ(parse_quadrant(quadrant_name(Quadrant::PlusMinus)), Quadrant::PlusMinus);
  EXPECT_THROW(parse_quadrant("sideways"), InvalidInput);
  LatticeCross lc;
  lc.m_max = 2;
  lc.n_max = 2;
  lc.quadrant = Quadrant::PlusPlus;
  const auto pts = lc.points();
  EXPECT_EQ(pts.size(), 5u);
  for (auto [m, n] : pts) {
    EXPECT_GE(m, 0);
    EXPECT_GE(n, 0);
  }
}

TEST(Vanishing, PeriodizedSums) {
  auto r = periodized_vanishing_residual(f0_line_function(), 1.0, {0.1, 0.5, 0.9});
  EXPECT_LE(r.r1, 1e-5);
  EXPECT_LE(r.r2, 1e-5);
}

TEST(Bessel, ExponentialInverseTransform) {
  struct Case {
    cplx y, rhs;
  };
  for (Case c : {Case{{0, 1}, {0.272622650704783530, 0}}, Case{{0, 2}, {0.147135796685535365, 0}},
                 Case{{1, 1}, {0.157914666497216625, 0.135165233676129041}}}) {
    auto r = ft_exp_inv_t_check(c.y);
    EXPECT_NEAR(std::abs(r.rhs - c.rhs), 0.0, 1e-15);
    EXPECT_LE(r.gap, 1e-10) << c.y;
  }
  EXPECT_THROW(ft_exp_inv_t_check({1, 0}), InvalidInput);
}

TEST(Bessel, RegularizedCheck) {
  auto r = regularized_ft_exp_check({2.0, 5.0}, 1e-2);
  EXPECT_LE(r.max_gap, 1e-6);
  EXPECT_THROW(regularized_ft_exp_check({2.0}, 0.5), InvalidInput);
}

TEST(Scaling, Covariance) {
  EXPECT_LE(scaling_covariance_gap(HyperbolaMeasure{f0_line_function(), 3.0}, 1.3, 0.7), 1e-10);
}
