#include <gtest/gtest.h>

#include <cmath>

#include "hup/transfer_ops.hpp"

using namespace hup;

namespace {
double kappa1(double x) { return 1.0 / (1.0 - x * x); }
double lambda1(double x) { return 1.0 / (1.0 + x); }
}  // namespace

TEST(Operators, PointValues) {
  auto k = GridFunction::from_closed_form(GridSpec{}, ClosedForm::kappa(1.0));
  auto tk = apply(OperatorKind::sub_t(0.5), k);
  EXPECT_NEAR(tk(0.3), 0.452601669711012216, 1e-9);
  auto l = GridFunction::from_closed_form(GridSpec::unit_positive(), ClosedForm::lambda1());
  auto sl = apply(OperatorKind::sub_s(0.5), l);
  EXPECT_NEAR(sl(0.3), 0.454182322160661196, 1e-9);
}

TEST(Operators, InvariantDensities) {
  auto l = GridFunction::from_closed_form(GridSpec::unit_positive(), ClosedForm::lambda1());
  auto sl = apply(OperatorKind::sub_s(1.0), l);
  for (double x : {0.05, 0.3, 0.77, 0.99}) EXPECT_NEAR(sl(x), lambda1(x), 1e-9) << x;
  for (double beta : {0.3, 0.7}) {
    auto kb = GridFunction::from_closed_form(GridSpec{}, ClosedForm::kappa(beta));
    auto t = apply(OperatorKind::sub_t(beta), kb);
    for (double x : {-0.8, -0.2, 0.0, 0.45, 0.9}) EXPECT_NEAR(t(x), kappa1(x), 1e-8) << beta << " " << x;
  }
}

TEST(Operators, Validation) {
  EXPECT_THROW(OperatorKind::sub_t(0.0).validate(), InvalidInput);
  EXPECT_THROW((OperatorKind{OpKind::SubT, MapParams::sigma(0.5)}.validate()), InvalidInput);
  EXPECT_EQ(parse_op_kind("SubS"), OpKind::SubS);
  EXPECT_THROW(parse_op_kind("nope"), InvalidInput);
}

TEST(Operators, Duality) {
  auto f = GridFunction::from_callable(GridSpec{}, [](double x) { return std::cos(2 * x) + 0.3 * x; });
  EXPECT_LE(duality_gap(MapParams::tau(0.6), f, [](double x) { return 1 + x * x; }), 1e-8);
  auto h = GridFunction::from_callable(GridSpec::unit_positive(), [](double x) { return std::exp(-x); });
  EXPECT_LE(duality_gap(MapParams::sigma(0.8), h, [](double x) { return std::sin(3 * x); }), 1e-8);
}

TEST(Operators, ZeroMeanContraction) {
  // ∫ T f = ∫ f on the full transfer operator, so ||T' f||_1 <= ||f||_1.
  auto f = GridFunction::from_callable(GridSpec{}, [](double x) { return std::sin(3 * x) + 0.5; });
  auto g = apply(OperatorKind::transfer_t(1.0), f);
  EXPECT_NEAR(g.integral(), f.integral(), 1e-8);
  EXPECT_LE(l1_norm(g), l1_norm(f) + 1e-8);
}

TEST(Operators, IterateMatchesRepeatedApply) {
  auto k = GridFunction::from_closed_form(GridSpec{}, ClosedForm::kappa(1.0));
  const OperatorKind op = OperatorKind::sub_t(0.5);
  auto a = iterate(op, 2, k);
  auto b = apply(op, apply(op, k));
  EXPECT_LE(l1_distance(a, b), 1e-10);
  EXPECT_LE(a.sup_norm(), 2 * 0.25 / 0.5 + 1e-6);
}

TEST(Shape, ParityMonotonicityConvexity) {
  auto odd = GridFunction::from_callable(GridSpec{}, [](double x) { return std::tanh(2 * x); });
  auto r = shape_checks(0.5, odd, ShapeClass::OddIncreasing);
  EXPECT_LE(r.symmetry_gap, 1e-10);
  EXPECT_LE(r.reflection_gap, 1e-10);
  EXPECT_GE(r.min_first_difference, -1e-10);
  auto even = GridFunction::from_callable(GridSpec{}, [](double x) { return std::cosh(3 * x); });
  auto e = shape_checks(1.0, even, ShapeClass::EvenConvexPositive);
  EXPECT_GE(e.min_second_difference, -1e-8);
  EXPECT_GE(e.min_value, -1e-12);
  EXPECT_TRUE(e.pass()) << (e.violations.empty() ? "" : e.violations.front());
}

TEST(Shape, Endpoint) {
  const OperatorKind op = OperatorKind::sub_t(0.5);
  auto f = GridFunction::from_callable(GridSpec{}, [](double x) { return std::sin(2 * x); });
  const double v = series_at(op, f, 1.0, TailRule::Smooth, std::nullopt, 256);
  EXPECT_NEAR(v, 0.5 * std::sin(1.0), 1e-8);
}

TEST(Gauss, FixedPointAndExtension) {
  auto l = GridFunction::from_closed_form(GridSpec::unit_positive(), ClosedForm::lambda1());
  EXPECT_LE(fixed_point_residual_S2(1.0, l), 1e-6);
  auto e = extend_from_unit_interval(1.0, l, 10.0);
  for (double t : {1.5, 3.0, 9.5}) EXPECT_NEAR(e(t), -1.0 / (t * (1 + t)), 1e-6) << t;
}

TEST(Interlace, FirstLevel) {
  auto one = GridFunction::from_closed_form(GridSpec{}, ClosedForm::constant(1.0));
  auto r = interlace_residual(0.4, one, 1);
  EXPECT_LE(r.r1, 1e-4);
  EXPECT_LE(r.r2, 1e-4);
  EXPECT_THROW(interlace_residual(0.4, one, 0), InvalidInput);
}
