// One line per acceptance criterion; exit status 1 if any fails.
#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "hup/hup.hpp"

using namespace hup;
namespace fs = std::filesystem;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what, double measured, double bound) {
    if (!ok) {
      pass = false;
      detail << " [" << what << ": " << measured << " vs " << bound << "]";
    }
  }
  void at_most(const std::string& what, double measured, double bound) {
    require(std::isfinite(measured) && measured <= bound, what, measured, bound);
  }
  void at_least(const std::string& what, double measured, double bound) {
    require(std::isfinite(measured) && measured >= bound, what, measured, bound);
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double max_gap_on(const GridFunction& f, const std::function<double(double)>& ref, double eta) {
  double m = 0.0;
  for (std::size_t i = 0; i < f.values().size(); ++i) {
    const double x = f.grid().nodes()[i];
    if (std::abs(x) <= eta) m = std::max(m, std::abs(f.values()[i] - ref(x)));
  }
  return m;
}

double bump(double u) { return std::abs(u) < 1.0 ? std::exp(-1.0 / (1.0 - u * u)) : 0.0; }

void ac1(Outcome& o) {
  auto k1 = [](double x) { return 1.0 / (1.0 - x * x); };
  for (double beta : {0.3, 0.7, 1.0}) {
    const auto t0 = std::chrono::steady_clock::now();
    auto kb = GridFunction::from_closed_form(GridSpec{}, ClosedForm::kappa(beta));
    const double gap = max_gap_on(apply(OperatorKind::sub_t(beta), kb), k1, 0.9);
    o.at_most("|T kappa_beta - kappa_1|, beta=" + std::to_string(beta), gap, 1e-8);
    o.at_most("runtime", seconds_since(t0), 5.0);
  }
  const auto t0 = std::chrono::steady_clock::now();
  auto l = GridFunction::from_closed_form(GridSpec::unit_positive(), ClosedForm::lambda1());
  o.at_most("|S_1 lambda_1 - lambda_1|", max_gap_on(apply(OperatorKind::sub_s(1.0), l), [](double x) { return 1 / (1 + x); }, 1.0),
            1e-8);
  o.at_most("runtime", seconds_since(t0), 5.0);
}

void ac2(Outcome& o) {
  for (double p : {0.3, 0.5, 0.9}) {
    auto g = GridFunction::from_closed_form(GridSpec::unit_positive(), ClosedForm::lambda1());
    auto t = GridFunction::from_closed_form(GridSpec{}, ClosedForm::kappa(1.0));
    const double q = 2 * p / (1 + p);
    for (int n = 1; n <= 6; ++n) {
      g = apply(OperatorKind::sub_s(p), g);
      t = apply(OperatorKind::sub_t(p), t);
      double excess = -std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < g.values().size(); ++i) {
        const double x = g.grid().nodes()[i];
        excess = std::max(excess, g.values()[i] - std::pow(q, n) / (1 + x));
      }
      o.at_most("S^n lambda_1 excess", excess, 1e-6);
      o.at_most("sup T^n kappa_1 excess", t.sup_norm() - 2 * std::pow(p, n) / (1 - p), 1e-6);
    }
  }
}

void ac3(Outcome& o) {
  for (double p : {0.5, 0.9})
    for (Family fam : {Family::SigmaGauss, Family::TauGauss})
      for (int N = 1; N <= 8; ++N) {
        WanderingQuery q{MapParams{fam, p}, N};
        const double m = wandering_measure_orbits(q).value;
        o.at_most("measure - bound", m - wandering_bound(q), 1e-4);
        o.at_most("|measure - duality|", std::abs(m - wandering_measure_duality(q)), 1e-4);
      }
}

void ac4(Outcome& o) {
  const std::vector<GridFunction> fs{
      GridFunction::from_closed_form(GridSpec{}, ClosedForm::kappa(1.0)),
      GridFunction::from_closed_form(GridSpec{}, ClosedForm::monomial(2)),
      GridFunction::from_callable(GridSpec{}, [](double x) { return std::cosh(3 * x); })};
  for (double beta : {0.3, 0.6, 1.0})
    for (const auto& f : fs)
      o.at_least("sandwich margin", shape_checks(beta, f, ShapeClass::EvenIncreasingPositive, {}, 200).sandwich_margin,
                 -1e-6);
}

void ac5(Outcome& o) {
  const std::vector<std::function<double(double)>> fs{
      [](double x) { return x; },
      [](double x) { return x * x * x - 0.5 * x; },
      [](double x) { return std::sin(2 * x); },
      [](double x) { return std::atan(4 * x); },
      [](double x) { return x * std::exp(-x * x) + std::sinh(x) / 3; }};
  for (double beta : {0.25, 0.5, 1.0})
    for (const auto& fn : fs) {
      const OperatorKind op = OperatorKind::sub_t(beta);
      auto f = GridFunction::from_callable(GridSpec{}, fn);
      const double v = series_at(op, f, 1.0, TailRule::Smooth, std::nullopt, 256);
      o.at_most("|T f(1) - beta f(beta)|", std::abs(v - beta * fn(beta)), 1e-8);
    }
}

void ac6(Outcome& o) {
  for (double p : {0.4, 0.8}) {
    auto one = GridFunction::from_closed_form(GridSpec{}, ClosedForm::constant(1.0));
    o.at_most("||T^40 1||/||1||", l1_norm(iterate(OperatorKind::sub_t(p), 40, one)) / l1_norm(one), 0.05);
    auto onep = GridFunction::from_closed_form(GridSpec::unit_positive(), ClosedForm::constant(1.0));
    o.at_most("||S^40 1||/||1||", l1_norm(iterate(OperatorKind::sub_s(p), 40, onep)) / l1_norm(onep), 0.05);
  }
  auto zm = GridFunction::from_callable(
      GridSpec{}, [](double x) { return (x >= 0 && x <= 0.5) ? 1.0 : ((x >= -0.5 && x < 0) ? -1.0 : 0.0); },
      {-0.5, 0.0, 0.5});
  o.at_most("zero-mean ratio at n=60", l1_norm(iterate(OperatorKind::sub_t(1.0), 60, zm)) / l1_norm(zm), 0.2);
  auto ind = GridFunction::from_closed_form(GridSpec{}, ClosedForm::indicator(-0.5, 0.5));
  auto prof = decay_profile(OperatorKind::sub_t(1.0), ind, 60, std::make_pair(-0.5, 0.5));
  for (std::size_t k = 1; k < prof.size(); ++k) o.at_most("local rise", prof[k].l1 - prof[k - 1].l1, 1e-3);
}

void ac7(Outcome& o) {
  const std::vector<GridFunction> fs{
      GridFunction::from_closed_form(GridSpec{}, ClosedForm::constant(1.0)),
      GridFunction::from_callable(GridSpec{}, [](double x) { return bump(x / 0.7); }, {-0.7, 0.7})};
  for (double beta : {0.4, 0.8})
    for (int N = 1; N <= 3; ++N)
      for (const auto& f : fs) {
        auto r = interlace_residual(beta, f, N);
        o.at_most("interlace r1", r.r1, 1e-4);
        o.at_most("interlace r2", r.r2, 1e-4);
      }
  for (double beta : {0.3, 0.5}) {
    const double a = beta + 0.05, b = 0.95;
    auto f = GridFunction::from_callable(
        GridSpec{},
        [a, b](double x) {
          return bump((2 * x - a - b) / (b - a)) + 0.5 * bump((2 * x + a + b) / (b - a));
        },
        {-b, -a, a, b});
    o.at_most("||T'^2 f - f||_1", transfer_square_residual(beta, f), 1e-6);
  }
}

void ac8(Outcome& o) {
  auto v = periodized_vanishing_residual(f0_line_function(), 1.0, {0.05, 0.25, 0.5, 0.75, 0.95});
  o.at_most("vanishing r1", v.r1, 1e-5);
  o.at_most("vanishing r2", v.r2, 1e-5);
  LatticeCross lc;  // α = β = 2, M = 2π
  auto s = lattice_residual_scan(f0_measure(), lc);
  o.at_most("lattice max residual", s.max_residual, 1e-4);
  o.at_most("lattice failures", s.failures, 0);
  auto l = GridFunction::from_closed_form(GridSpec::unit_positive(), ClosedForm::lambda1());
  o.at_most("fixed point", fixed_point_residual_S2(1.0, l), 1e-6);
  auto e = extend_from_unit_interval(1.0, l, 10.0);
  double m = 0.0;
  for (int k = 1; k <= 200; ++k) {
    const double t = 1.0 + 9.0 * k / 200.0;
    m = std::max(m, std::abs(e(t) + 1.0 / (t * (1 + t))));
  }
  o.at_most("extension", m, 1e-6);
}

void ac9(Outcome& o) {
  auto mu = f0_measure();
  double worst = 0.0;
  for (int k = 0, used = 0; used < 20; ++k) {
    const double x = 0.21 + 0.377 * k;
    if (std::abs(std::remainder(x, 2.0)) < 1e-3) continue;
    worst = std::max(worst, std::abs(hyperbola_ft(mu, x, 0.0) - cross_ft_closed_form(x)));
    ++used;
  }
  o.at_most("two routes", worst, 1e-4);
  double mn = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= 9900; ++k) mn = std::min(mn, std::abs(nielsen_spiral(0.1 + 0.001 * k)));
  o.at_least("min |spiral|", mn, 1e-3);
}

void ac10(Outcome& o) {
  for (cplx y : {cplx(0, 1), cplx(0, 2), cplx(1, 1)}) o.at_most("bessel gap", ft_exp_inv_t_check(y).gap, 1e-5);
  const double eps = 1e-2;
  auto r = regularized_ft_exp_check({2.0, 5.0, 20.0}, eps);
  for (const auto& s : r.samples) o.at_most("regularized gap", s.gap, 5 * eps);
}

void ac11(Outcome& o) {
  const double eps = 0.5;
  auto P = LineFunction::decaying([=](double t) { return eps / (pi * (eps * eps + t * t)); }, Decay::InverseSquare);
  double m = 0.0;
  for (int k = 0; k < 10; ++k) {
    const double x = -4.3 + 0.97 * k;
    m = std::max(m, std::abs(hilbert(P, x) - x / (pi * (eps * eps + x * x))));
  }
  o.at_most("Poisson", m, 1e-6);

  auto f = LineFunction::decaying([](double t) { return (1 - t * t) / ((1 + t * t) * (1 + t * t)); },
                                  Decay::InverseSquare);
  o.at_most("H~^2 residual", double_modified_residual(f, {-2, -0.5, 0.3, 1, 3}), 1e-4);

  auto tf = LineFunction::decaying([](double t) { return t / (1 + t * t); }, Decay::Inverse);
  for (double beta : {0.5, 1.0}) o.at_most("c_beta commutator", modified_commutator_residual(beta, tf, {0.5, -1.0, 2.5}), 1e-4);
  o.at_most("|c_1|", std::abs(c_beta(1.0, tf)), 1e-10);

  auto phi = LineFunction::compact([](double t) { return bump(2 * t - 3); }, 1.0, 2.0);
  for (double beta : {0.5, 1.0})
    o.at_most("J* commutator", commutator_Jstar_hilbert(beta, phi, {0.5, -0.7, 3.0}).max_residual, 1e-4);

  auto ind = LineFunction::compact([](double) { return 1.0; }, 0.3, 2.7, {0.3, 2.7});
  for (const FourierGap& g : periodization_fourier_check(ind, {0, 1, 3})) o.at_most("Pi_2 Fourier", g.gap, 1e-6);

  auto sg = LineFunction::compact([](double t) { return t >= 0 ? 1.0 : -1.0; }, -1, 1, {-1, 0, 1});
  auto r = valeur_au_point(LineFunction::zero(), sg, 2.0);
  o.at_most("pev routes", r.route_gap, 1e-4);
  o.at_most("pev cutoffs", r.cutoff_gap, 1e-4);
}

int run_cli(const std::string& args) {
  const int st = std::system((std::string(HUP_CLI_PATH) + " " + args + " >/dev/null 2>&1").c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

void ac12(Outcome& o) {
  const fs::path base = fs::temp_directory_path() / "hup_acceptance";
  fs::remove_all(base);
  const fs::path a = base / "a", b = base / "b";
  o.require(run_cli("verify all --out " + a.string()) == 0, "first run exit", 1, 0);
  o.require(run_cli("verify all --out " + b.string()) == 0, "second run exit", 1, 0);
  std::size_t files = 0;
  if (fs::exists(a))
    for (const auto& e : fs::directory_iterator(a)) {
      ++files;
      const fs::path other = b / e.path().filename();
      o.require(fs::exists(other) && slurp(e.path()) == slurp(other), e.path().filename().string() + " identical", 0, 1);
    }
  o.require(files == registry().size() + 1, "report count", static_cast<double>(files),
            static_cast<double>(registry().size() + 1));
  fs::remove_all(base);
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"invariance identities", ac1},     {"geometric bounds", ac2},
      {"wandering measures", ac3},        {"sandwich bound", ac4},
      {"endpoint identity", ac5},         {"decay surrogates for exactness", ac6},
      {"interlacing", ac7},               {"f0 suite", ac8},
      {"spiral and one-branch transform", ac9}, {"Bessel Fourier identity", ac10},
      {"Hilbert suite", ac11},            {"end-to-end verify all", ac12}};
  bool all = true;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[k].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    all = all && o.pass;
    std::printf("AC%zu %s: %s (%.1f s)%s\n", k + 1, o.pass ? "PASS" : "FAIL", criteria[k].first.c_str(),
                seconds_since(t0), o.detail.str().c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
