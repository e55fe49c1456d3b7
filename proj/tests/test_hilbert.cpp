#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hup/hilbert.hpp"

using namespace hup;
constexpr double pi = std::numbers::pi;

namespace {
LineFunction poisson() {
  return LineFunction::decaying([](double t) { return 1 / (pi * (1 + t * t)); }, Decay::InverseSquare);
}
LineFunction unit_indicator() { return LineFunction::compact([](double) { return 1.0; }, -1, 1, {-1, 1}); }
}  // namespace

TEST(LineFunction, DecayVerification) {
  EXPECT_THROW(LineFunction::decaying([](double t) { return 1 / (1 + std::abs(t)); }, Decay::InverseSquare), InvalidInput);
  EXPECT_NO_THROW(LineFunction::decaying([](double t) { return 1 / (1 + std::abs(t)); }, Decay::Inverse));
  EXPECT_THROW(LineFunction::compact([](double) { return 1.0; }, 1, 1), InvalidInput);
  auto f = unit_indicator();
  EXPECT_EQ(f(3.0), 0.0);
  EXPECT_NEAR(line_integral(f), 2.0, 1e-12);
}

TEST(Hilbert, ClosedForms) {
  auto P = poisson();
  for (double x : {-3.0, -0.5, 0.0, 1.0, 4.0}) EXPECT_NEAR(hilbert(P, x), x / (pi * (1 + x * x)), 1e-7) << x;
  EXPECT_NEAR(hilbert(unit_indicator(), 2.0), 0.349699152566059778, 1e-10);
  EXPECT_NEAR(hilbert(unit_indicator(), 0.5), 0.349699152566059778, 1e-8);
  EXPECT_NEAR(hilbert(unit_indicator(), -2.0), -0.349699152566059778, 1e-10);
  EXPECT_THROW(hilbert(unit_indicator(), 1.0), JumpPoint);
}

TEST(Hilbert, AntiInvolution) {
  auto f = LineFunction::compact([](double t) { return std::exp(-1 / (1 - t * t)); }, -1, 1);
  EXPECT_LE(anti_involution_residual(f, {-1.5, 0.2, 2.0}), 1e-4);
}

TEST(ModifiedHilbert, ConstantsAndSquares) {
  auto one = LineFunction::decaying([](double) { return 1.0; }, Decay::Bounded);
  EXPECT_NEAR(hilbert_modified(one, 0.3), 0.0, 1e-10);
  EXPECT_THROW(hilbert(one, 0.3), InvalidInput);
  // H~ differs from H by the constant -(1/π)∫ f t/(1+t²), which vanishes for even f.
  auto P = poisson();
  EXPECT_NEAR(hilbert_modified(P, 1.3) - hilbert(P, 1.3), 0.0, 1e-10);
  auto f = LineFunction::decaying([](double t) { return (1 - t * t) / ((1 + t * t) * (1 + t * t)); },
                                  Decay::InverseSquare);
  EXPECT_NEAR(c_of(f), 0.25, 1e-10);
  EXPECT_LE(double_modified_residual(f, {-0.5, 1.0}), 1e-4);
}

TEST(Involution, CBetaAndCommutator) {
  auto tf = LineFunction::decaying([](double t) { return t / (1 + t * t); }, Decay::Inverse);
  EXPECT_NEAR(c_beta(0.5, tf), -1.0 / 6.0, 1e-10);
  EXPECT_NEAR(c_beta(1.0, tf), 0.0, 1e-10);
  EXPECT_THROW(c_beta(0.0, tf), InvalidInput);
  auto phi = LineFunction::compact([](double t) { return std::exp(-1 / (1 - (2 * t - 3) * (2 * t - 3))); }, 1.0, 2.0);
  auto r = commutator_Jstar_hilbert(0.5, phi, {0.5, 3.0});
  EXPECT_LE(r.max_residual, 1e-4);
  EXPECT_GT(r.correction, 0.0);
}

TEST(Involution, IsAnInvolution) {
  auto f = LineFunction::decaying([](double t) { return std::exp(-t * t) * (1 + t); }, Decay::InverseSquare);
  auto jf = apply_J(2.0, f);
  for (double x : {-2.0, 0.3, 4.0}) EXPECT_NEAR(involution_J(2.0, jf, x), f(x), 1e-12);
  auto [lo, hi] = detail::mirrored_support(0.5, LineFunction::compact([](double) { return 1.0; }, 1, 2));
  EXPECT_NEAR(lo, -0.5, 1e-15);
  EXPECT_NEAR(hi, -0.25, 1e-15);
}

TEST(Periodic, HilbertOfCosine) {
  PeriodicFunction cs([](double t) { return std::cos(pi * t); });
  for (double x : {-0.7, 0.3}) EXPECT_NEAR(hilbert_periodic(cs, x), std::sin(pi * x), 1e-8);
}

TEST(Periodization, PreservesMassOfPositiveFunctions) {
  auto g = LineFunction::decaying([](double t) { return std::exp(-t * t); }, Decay::InverseSquare);
  auto [p, l] = periodization_norms(g);
  EXPECT_NEAR(p, std::sqrt(pi), 1e-9);
  EXPECT_NEAR(l, std::sqrt(pi), 1e-9);
}

TEST(Szego, PoissonSplitsByFrequencySign) {
  auto P = poisson();
  EXPECT_NEAR(std::abs(szego_fourier(P, -1, 2.0) - std::exp(-2.0)), 0.0, 1e-6);
  EXPECT_NEAR(std::abs(szego_fourier(P, +1, 2.0)), 0.0, 1e-6);
}

TEST(Valeur, SignIndicator) {
  auto sg = LineFunction::compact([](double t) { return t >= 0 ? 1.0 : -1.0; }, -1, 1, {-1, 0, 1});
  auto r = valeur_au_point(LineFunction::zero(), sg, 2.0);
  EXPECT_NEAR(r.pointwise, std::log(4.0 / 3.0) / pi, 1e-9);
  ASSERT_EQ(r.limit_routes.size(), 2u);
  for (double v : r.limit_routes) EXPECT_NEAR(v, 0.0915720477392434088, 1e-4);
  EXPECT_LE(r.cutoff_gap, 1e-4);
}
