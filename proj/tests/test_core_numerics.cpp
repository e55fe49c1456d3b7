#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hup/oscillatory.hpp"
#include "hup/pv.hpp"
#include "hup/quadrature.hpp"
#include "hup/special.hpp"

using namespace hup;
constexpr double pi = std::numbers::pi;

TEST(Quadrature, GaussLegendreIsExactForPolynomials) {
  auto r = gauss_legendre(8);
  double s = 0.0;
  for (std::size_t k = 0; k < r.x.size(); ++k) s += r.w[k] * std::pow(r.x[k], 14);
  EXPECT_NEAR(s, 2.0 / 15.0, 1e-15);
}

TEST(Quadrature, AdaptiveIntegrals) {
  EXPECT_NEAR(integrate([](double t) { return 1 / (1 + t); }, 0, 1), std::numbers::ln2, 1e-14);
  EXPECT_NEAR(integrate([](double t) { return std::sqrt(t); }, 0, 1), 2.0 / 3.0, 1e-10);
  // Reversed limits flip the sign.
  EXPECT_NEAR(integrate([](double t) { return t; }, 1, 0), -0.5, 1e-15);
}

TEST(Quadrature, Breakpoints) {
  const double br[] = {0.3};
  auto step = [](double t) { return t < 0.3 ? 1.0 : 0.0; };
  EXPECT_NEAR(integrate(step, 0, 1, {}, br), 0.3, 1e-14);
}

TEST(Quadrature, HalfLine) {
  EXPECT_NEAR(integrate_to_infinity([](double t) { return 1 / (1 + t * t); }, 0), pi / 2, 1e-10);
  EXPECT_NEAR(integrate_from_minus_infinity([](double t) { return std::exp(t); }, 0), 1.0, 1e-10);
}

TEST(PrincipalValue, SimplePole) {
  // pv ∫_{-2}^{2} dt/(1-t) = log 3.
  EXPECT_NEAR(integrate_pv([](double t) { return 1 / (1 - t); }, 1, -2, 2), std::log(3.0), 1e-9);
  // pv ∫_{-1}^{1} e^t/t dt = 2 Shi(1).
  EXPECT_NEAR(integrate_pv([](double t) { return std::exp(t) / t; }, 0, -1, 1), 2 * 1.05725087537572851, 1e-9);
}

TEST(PrincipalValue, RejectsDoublePole) {
  EXPECT_THROW(integrate_pv([](double t) { return 1 / ((1 - t) * (1 - t)); }, 1, -2, 2), NonConvergence);
}

TEST(PrincipalValue, ConfigValidation) {
  PvConfig c;
  c.eps_schedule = {1e-3};
  EXPECT_THROW(c.validate(), InvalidInput);
  c.eps_schedule = {1e-3, 1e-2};
  EXPECT_THROW(c.validate(), InvalidInput);
}

TEST(Special, SineCosineIntegrals) {
  auto s = sici(pi);
  EXPECT_NEAR(s.si + pi / 2, 1.85193705198246617036, 1e-14);
  EXPECT_NEAR(s.ci, 0.07366791204642548599, 1e-14);
  s = sici(1.0);
  EXPECT_NEAR(s.si + pi / 2, 0.94608307036718301494, 1e-14);
  EXPECT_NEAR(s.ci, 0.33740392290096813466, 1e-14);
  s = sici(100.0);
  EXPECT_NEAR(s.si + pi / 2, 1.56222546688905629335, 1e-13);
  EXPECT_NEAR(s.ci, -0.00514882514261049214, 1e-13);
  EXPECT_THROW(sici(0.0), InvalidInput);
}

TEST(Special, Polygamma) {
  EXPECT_NEAR(digamma(1.0), -0.57721566490153286061, 1e-14);
  EXPECT_NEAR(digamma(0.5), -1.96351002602142347944, 1e-13);
  EXPECT_NEAR(trigamma(1.0), pi * pi / 6, 1e-14);
  EXPECT_NEAR(trigamma(0.5), pi * pi / 2, 1e-13);
}

TEST(Special, BesselRatio) {
  EXPECT_NEAR(bessel_j1_ratio(1.0), 0.57672480775687338720, 1e-14);
  EXPECT_NEAR(bessel_j1_ratio(2.0), 0.28297998688054250280, 1e-14);
  EXPECT_NEAR(bessel_j1_ratio(25.0), 0.00869454923377228733, 1e-12);
  EXPECT_NEAR(bessel_j1_ratio(40.0), -0.02213893709534439589, 1e-12);
  // Series and asymptotic branches agree where they overlap.
  EXPECT_NEAR(bessel_j1_ratio_series(30.0), bessel_j1_ratio_asymptotic(30.0), 1e-11);
  EXPECT_NEAR(bessel_j1_ratio_zero(1), 3.67049266053097331430, 1e-12);
}

TEST(Oscillatory, HalfLineAgainstSici) {
  struct Case {
    double xi, re, im;
  };
  for (Case c : {Case{1.0, -0.07366791204642548599, -0.28114072518756955113},
                 Case{0.5, -0.47200065143956865078, 0.20003415864040813916},
                 Case{2.5, -0.12377227540325956961, 0.01496533958386916224},
                 Case{-1.0, -0.07366791204642548599, 0.28114072518756955113}}) {
    auto v = integrate_osc_halfline(c.xi);
    EXPECT_NEAR(v.real(), c.re, 1e-9) << c.xi;
    EXPECT_NEAR(v.imag(), c.im, 1e-9) << c.xi;
  }
  EXPECT_THROW(integrate_osc_halfline(0.0), InvalidInput);
}

TEST(Oscillatory, ExponentialAmplitude) {
  // ∫_0^∞ e^{-t} e^{2it} dt = 1/(1-2i).
  auto v = oscillatory_tail([](double t) { return std::exp(-t); }, 2.0, 0.0);
  EXPECT_NEAR(v.real(), 0.2, 1e-10);
  EXPECT_NEAR(v.imag(), 0.4, 1e-10);
}
