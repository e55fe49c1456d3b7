#pragma once

// Fourier transforms of absolutely continuous measures on the hyperbola
// x₁x₂ = M²/(4π²), the lattice-cross residuals, the critical density f₀, the
// Nielsen spiral and the Fourier transform of x^{-1/2}J₁(2√x).

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "hup/errors.hpp"
#include "hup/hilbert.hpp"
#include "hup/oscillatory.hpp"
#include "hup/quadrature.hpp"
#include "hup/special.hpp"

namespace hup {

/// f₀(t) = 1/(1+t) on (0, 1], -1/(t(1+t)) beyond; 0 for t ≤ 0.
inline double f0_normalized(double t) {
  if (!(t > 0)) return 0.0;
  return t <= 1.0 ? 1.0 / (1.0 + t) : -1.0 / (t * (1.0 + t));
}

/// 1/(2(2+αt)) on (0, 2/α], -1/(αt(2+αt)) beyond; equals f₀(αt/2)/4.
inline double critical_f0(double t, double alpha) {
  if (!(t > 0)) throw InvalidInput("critical_f0: t must be positive");
  if (!(alpha > 0)) throw InvalidInput("critical_f0: alpha must be positive");
  const double at = alpha * t;
  return at <= 2.0 ? 1.0 / (2.0 * (2.0 + at)) : -1.0 / (at * (2.0 + at));
}

/// The compressed density C₀·critical_f0(·, α).
struct CriticalDensity {
  cplx c0{1.0, 0.0};
  double alpha = 2.0;

  void validate() const {
    if (!(alpha > 0)) throw InvalidInput("CriticalDensity: alpha must be positive");
  }
  cplx operator()(double t) const { return t > 0 ? c0 * critical_f0(t, alpha) : cplx{}; }
};

struct HyperbolaMeasure {
  LineFunction density;  // dπ₁μ/dt
  double mass = 2.0 * std::numbers::pi;

  void validate() const {
    if (!(mass > 0)) throw InvalidInput("HyperbolaMeasure: mass must be positive");
    if (density.decay() == Decay::Inverse || density.decay() == Decay::Bounded)
      throw InvalidInput("HyperbolaMeasure: density must be integrable");
  }
};

inline LineFunction f0_line_function() {
  return LineFunction::decaying(f0_normalized, Decay::InverseSquare, {0.0, 1.0});
}

/// The f₀-measure at the critical normalization M = 2π.
inline HyperbolaMeasure f0_measure() { return {f0_line_function(), 2.0 * std::numbers::pi}; }

namespace detail {

// ∫_0^∞ e^{iπ(a t + c/t)} ρ(t) dt, split at t = 1; u = 1/t on (0, 1).
template <class Rho>
cplx half_hyperbola_ft(Rho&& rho, double a, double c, const std::vector<double>& breaks, const PvConfig& cfg) {
  const double pi = std::numbers::pi;
  QuadOptions qo{.abs_tol = 1e-13, .rel_tol = 1e-12, .max_intervals = 20000};
  auto phase = [&](double t) { return std::exp(cplx(0.0, pi * (a * t + c / t))); };
  cplx s{};

  std::vector<double> inner, outer;
  for (double p : breaks) {
    if (p > 0 && p < 1) inner.push_back(p);
    if (p > 1) outer.push_back(p);
  }

  // (0, 1)
  if (c == 0.0) {
    auto r = integrate_adaptive([&](double t) { return rho(t) * phase(t); }, 0.0, 1.0, qo, inner);
    if (!r.converged) throw NonConvergence("hyperbola_ft: inner part failed", std::abs(r.value), r.error);
    s += r.value;
  } else {
    auto amp = [&](double u) -> cplx { return rho(1.0 / u) * std::exp(cplx(0.0, pi * a / u)) / (u * u); };
    std::vector<double> ub;
    for (double p : inner) ub.push_back(1.0 / p);
    double R = 2.0;
    for (double q : ub) R = std::max(R, q + 1.0);
    const double period = 2.0 / std::abs(c);
    for (double u = 1.0 + period; u < R; u += period) ub.push_back(u);
    auto r = integrate_adaptive([&](double u) { return amp(u) * std::exp(cplx(0.0, pi * c * u)); }, 1.0, R, qo, ub);
    if (!r.converged) throw NonConvergence("hyperbola_ft: inner central part failed", std::abs(r.value), r.error);
    s += r.value + oscillatory_tail(amp, pi * c, R, cfg, 1e-7);
  }

  // (1, ∞)
  if (a == 0.0) {
    auto f = [&](double t) { return rho(t) * phase(t); };
    auto r = integrate_adaptive_to_infinity(f, 1.0, qo, 1.0, outer);
    if (!r.converged) throw NonConvergence("hyperbola_ft: outer part failed", std::abs(r.value), r.error);
    s += r.value;
  } else {
    auto amp = [&](double t) -> cplx { return rho(t) * std::exp(cplx(0.0, pi * c / t)); };
    double R = 2.0;
    for (double q : outer) R = std::max(R, q + 1.0);
    std::vector<double> tb = outer;
    const double period = 2.0 / std::abs(a);
    for (double t = 1.0 + period; t < R; t += period) tb.push_back(t);
    auto r = integrate_adaptive([&](double t) { return amp(t) * std::exp(cplx(0.0, pi * a * t)); }, 1.0, R, qo, tb);
    if (!r.converged) throw NonConvergence("hyperbola_ft: outer central part failed", std::abs(r.value), r.error);
    s += r.value + oscillatory_tail(amp, pi * a, R, cfg, 1e-7);
  }
  return s;
}

}  // namespace detail

/// û(ξ) = ∫_{ℝ^×} exp(iπ[ξ₁t + M²ξ₂/(4π²t)]) dπ₁μ(t).
inline cplx hyperbola_ft(const HyperbolaMeasure& mu, double xi1, double xi2, const PvConfig& cfg = {}) {
  mu.validate();
  const double pi = std::numbers::pi;
  const double c = mu.mass * mu.mass * xi2 / (4.0 * pi * pi);
  const LineFunction& rho = mu.density;
  std::vector<double> pos, neg;
  for (double p : rho.breaks()) {
    if (p > 0 && std::isfinite(p)) pos.push_back(p);
    if (p < 0 && std::isfinite(p)) neg.push_back(-p);
  }
  cplx s{};
  const bool has_pos = !rho.is_compact() || rho.support_hi() > 0;
  const bool has_neg = !rho.is_compact() || rho.support_lo() < 0;
  if (has_pos) s += detail::half_hyperbola_ft([&](double t) { return rho(t); }, xi1, c, pos, cfg);
  if (has_neg) s += detail::half_hyperbola_ft([&](double t) { return rho(-t); }, -xi1, -c, neg, cfg);
  return s;
}

enum class Quadrant { Full, PlusPlus, PlusMinus, MinusPlus, MinusMinus };

inline std::string quadrant_name(Quadrant q) {
  switch (q) {
    case Quadrant::Full: return "full";
    case Quadrant::PlusPlus: return "++";
    case Quadrant::PlusMinus: return "+-";
    case Quadrant::MinusPlus: return "-+";
    case Quadrant::MinusMinus: return "--";
  }
  return "";
}

inline Quadrant parse_quadrant(const std::string& s) {
  for (Quadrant q : {Quadrant::Full, Quadrant::PlusPlus, Quadrant::PlusMinus, Quadrant::MinusPlus, Quadrant::MinusMinus})
    if (quadrant_name(q) == s) return q;
  throw InvalidInput("unknown quadrant '" + s + "'");
}

/// (αℤ × {0}) ∪ ({0} × βℤ), truncated to |m| ≤ m_max, |n| ≤ n_max.
struct LatticeCross {
  double alpha = 2.0;
  double beta = 2.0;
  int m_max = 8;
  int n_max = 8;
  Quadrant quadrant = Quadrant::Full;

  void validate() const {
    if (!(alpha > 0 && beta > 0)) throw InvalidInput("LatticeCross: alpha and beta must be positive");
    if (m_max < 0 || n_max < 0) throw InvalidInput("LatticeCross: truncations must be nonnegative");
  }

  /// Integer labels (m, n), exactly one of them possibly nonzero; (0, 0) once.
  std::vector<std::pair<int, int>> points() const {
    int m_lo = -m_max, m_hi = m_max, n_lo = -n_max, n_hi = n_max;
    switch (quadrant) {
      case Quadrant::Full: break;
      case Quadrant::PlusPlus: m_lo = 0; n_lo = 1; break;
      case Quadrant::PlusMinus: m_lo = 0; n_hi = -1; break;
      case Quadrant::MinusPlus: m_hi = 0; n_lo = 1; break;
      case Quadrant::MinusMinus: m_hi = 0; n_hi = -1; break;
    }
    std::vector<std::pair<int, int>> out;
    for (int m = m_lo; m <= m_hi; ++m) out.emplace_back(m, 0);
    for (int n = n_lo; n <= n_hi; ++n)
      if (n != 0) out.emplace_back(0, n);
    return out;
  }
};

struct LatticeEntry {
  int m = 0;
  int n = 0;
  double xi1 = 0.0;
  double xi2 = 0.0;
  cplx value;
  double residual = 0.0;
  std::string error;  // nonempty if the quadrature failed at this point
};

struct LatticeScan {
  std::vector<LatticeEntry> entries;
  double max_residual = 0.0;
  int failures = 0;
};

inline LatticeScan lattice_residual_scan(const HyperbolaMeasure& mu, const LatticeCross& lc, const PvConfig& cfg = {}) {
  mu.validate();
  lc.validate();
  LatticeScan scan;
  for (auto [m, n] : lc.points()) {
    LatticeEntry e;
    e.m = m;
    e.n = n;
    e.xi1 = lc.alpha * m;
    e.xi2 = lc.beta * n;
    try {
      e.value = hyperbola_ft(mu, e.xi1, e.xi2, cfg);
      e.residual = std::abs(e.value);
      scan.max_residual = std::max(scan.max_residual, e.residual);
    } catch (const NonConvergence& ex) {
      e.error = ex.what();
      ++scan.failures;
    }
    scan.entries.push_back(e);
  }
  return scan;
}

/// ∫_1^∞ e^{iπξt}/t dt = -ci(π|ξ|) - i·sgn(ξ)·si(π|ξ|).
inline cplx osc_halfline_closed(double xi) {
  if (xi == 0.0) throw InvalidInput("osc_halfline_closed: diverges at xi = 0");
  const SiCi s = sici(std::numbers::pi * std::abs(xi));
  return {-s.ci, -(xi > 0 ? 1.0 : -1.0) * s.si};
}

/// ci(πx) + i·si(πx).
inline cplx nielsen_spiral(double x) {
  if (!(x > 0)) throw InvalidInput("nielsen_spiral: x must be positive");
  const SiCi s = sici(std::numbers::pi * x);
  return {s.ci, s.si};
}

/// C₀(e^{-iπξ₁} - 1)·∫_1^∞ e^{iπξ₁t}/t dt, the f₀-measure transform at (ξ₁, 0).
inline cplx cross_ft_closed_form(double xi1, cplx c0 = 1.0) {
  const cplx pre = std::exp(cplx(0.0, -std::numbers::pi * xi1)) - 1.0;
  if (std::abs(std::remainder(xi1, 2.0)) < 1e-15) return 0.0;
  return c0 * pre * osc_halfline_closed(xi1);
}

/// |cross_ft_closed_form(ξ₁, C₀)| for the nonvanishing claim, which excludes 2ℤ.
inline double cross_ft_nonvanishing(double xi1, cplx c0 = 1.0) {
  if (std::abs(std::remainder(xi1, 2.0)) < 1e-12) throw InvalidInput("cross_ft_nonvanishing: xi1 lies in 2Z");
  return std::abs(cross_ft_closed_form(xi1, c0));
}

struct VanishingResidual {
  double r1 = 0.0;  // max |Σ_j f(t+j)|
  double r2 = 0.0;  // max |Σ_j (t+j)^{-2} f(γ/(t+j))|
};

struct VanishingOptions {
  long terms = 256;
  double tol = 1e-9;
};

/// Sums over j ≥ 0 with Euler-Maclaurin tails (integral from the last term
/// plus ½ and the first derivative correction), certified by doubling.
inline VanishingResidual periodized_vanishing_residual(const LineFunction& f, double gamma, const std::vector<double>& samples,
                                                       const VanishingOptions& opt = {}) {
  if (!(gamma > 0)) throw InvalidInput("periodized_vanishing_residual: gamma must be positive");
  QuadOptions qo{.abs_tol = 1e-15, .rel_tol = 1e-13, .max_intervals = 2000};
  std::vector<double> jb = f.breaks();
  auto sums = [&](double t, long J) {
    double a = 0.0, b = 0.0;
    for (long j = 0; j <= J; ++j) {
      const double u = t + j;
      a += f(u);
      b += f(gamma / u) / (u * u);
    }
    const double edge = t + J + 0.5;
    auto gb = [&](double u) { return f(gamma / u) / (u * u); };
    a += integrate_adaptive_to_infinity(f, edge, qo, edge, jb).value + (f(t + J + 1) - f(t + J)) / 24.0;
    b += integrate_adaptive([&](double v) { return f(v); }, 0.0, gamma / edge, qo, jb).value / gamma +
         (gb(t + J + 1) - gb(t + J)) / 24.0;
    return std::pair{a, b};
  };
  VanishingResidual r;
  for (double t : samples) {
    if (!(t > 0 && t < 1)) throw InvalidInput("periodized_vanishing_residual: samples must lie in (0, 1)");
    auto [a1, b1] = sums(t, opt.terms);
    auto [a2, b2] = sums(t, 2 * opt.terms);
    if (std::abs(a1 - a2) > opt.tol || std::abs(b1 - b2) > opt.tol)
      throw TailNotControlled("periodized_vanishing_residual: tails not controlled at t = " + std::to_string(t));
    r.r1 = std::max(r.r1, std::abs(a2));
    r.r2 = std::max(r.r2, std::abs(b2));
  }
  return r;
}

struct BesselFtCheck {
  cplx lhs;
  cplx rhs;
  double gap = 0.0;
};

/// ∫_0^∞ e^{iπxy} x^{-1/2}J₁(2√x) dx against 1 - e^{-i/(πy)}, Im y > 0.
inline BesselFtCheck ft_exp_inv_t_check(cplx y) {
  if (!(y.imag() > 0)) throw InvalidInput("ft_exp_inv_t_check: need Im y > 0");
  const double pi = std::numbers::pi;
  const double X = 40.0 / (pi * y.imag());
  std::vector<double> br;
  for (double x = 1.0; x < X; x += 1.0) br.push_back(x);
  QuadOptions qo{.abs_tol = 1e-14, .rel_tol = 1e-13, .max_intervals = 20000};
  auto f = [&](double x) { return std::exp(cplx(0.0, pi) * x * y) * bessel_j1_ratio(x); };
  BesselFtCheck c;
  c.lhs = integrate(f, 0.0, X, qo, br);
  c.rhs = 1.0 - std::exp(cplx(0.0, -1.0) / (pi * y));
  c.gap = std::abs(c.lhs - c.rhs);
  return c;
}

struct RegularizedSample {
  double x = 0.0;
  double lhs = 0.0;         // (2π)^{-1} ∫ e^{i/t + itx - ε|t|} dt
  double target = 0.0;      // P_ε(x) - ∫_0^∞ P_ε(x-s) x^{-1/2}J₁(2√s) ds
  double unmollified = 0.0;  // -x^{-1/2}J₁(2√x)
  double gap = 0.0;
  double gap_unmollified = 0.0;
};

struct RegularizedReport {
  double eps = 0.0;
  std::vector<RegularizedSample> samples;
  double max_gap = 0.0;
  double max_gap_unmollified = 0.0;
};

/// The ε-regularized line integral against its Poisson-mollified target.
inline RegularizedReport regularized_ft_exp_check(const std::vector<double>& xs, double eps, const PvConfig& cfg = {}) {
  if (!(eps >= 1e-3 && eps <= 1e-1)) throw InvalidInput("regularized_ft_exp_check: eps must lie in [1e-3, 1e-1]");
  const double pi = std::numbers::pi;
  QuadOptions qo{.abs_tol = 1e-13, .rel_tol = 1e-12, .max_intervals = 20000};
  RegularizedReport rep;
  rep.eps = eps;
  for (double x : xs) {
    if (!(x > 0.5)) throw InvalidInput("regularized_ft_exp_check: samples must be bounded away from 0");
    // (1/π) Re ∫_0^∞ e^{i/t + itx - εt} dt; u = 1/t on (0, 1).
    auto inner_amp = [&](double u) -> cplx { return std::exp(cplx(-eps / u, x / u)) / (u * u); };
    auto outer_amp = [&](double t) -> cplx { return std::exp(cplx(-eps * t, 1.0 / t)); };
    const cplx inner = oscillatory_tail(inner_amp, 1.0, 1.0, cfg, 1e-8);
    const cplx outer = oscillatory_tail(outer_amp, x, 1.0, cfg, 1e-8);
    RegularizedSample s{x};
    s.lhs = (inner + outer).real() / pi;

    auto P = [&](double d) { return eps / (pi * (eps * eps + d * d)); };
    std::vector<double> br{x};
    for (double k : {1.0, 10.0, 100.0}) {
      if (x - k * eps > 0) br.push_back(x - k * eps);
      br.push_back(x + k * eps);
    }
    const double far = 2.0 * x + 10.0;
    for (double t = 1.0; t < far; t += 1.0) br.push_back(t);
    auto conv = [&](double t) { return P(x - t) * bessel_j1_ratio(t); };
    const double body = integrate(conv, 0.0, far, qo, br) + integrate_to_infinity(conv, far, qo, far);
    s.target = P(x) - body;
    s.unmollified = -bessel_j1_ratio(x);
    s.gap = std::abs(s.lhs - s.target);
    s.gap_unmollified = std::abs(s.lhs - s.unmollified);
    rep.max_gap = std::max(rep.max_gap, s.gap);
    rep.max_gap_unmollified = std::max(rep.max_gap_unmollified, s.gap_unmollified);
    rep.samples.push_back(s);
  }
  return rep;
}

/// Mass M at ξ against mass 2π with density λρ(λ·) at λξ, λ = M/(2π).
inline double scaling_covariance_gap(const HyperbolaMeasure& mu, double xi1, double xi2, const PvConfig& cfg = {}) {
  mu.validate();
  const double lam = mu.mass / (2.0 * std::numbers::pi);
  const LineFunction& rho = mu.density;
  std::vector<double> jumps;
  for (double p : rho.jumps()) jumps.push_back(p / lam);
  LineFunction scaled = rho.is_compact()
                            ? LineFunction::compact([rho, lam](double s) { return lam * rho(lam * s); },
                                                    rho.support_lo() / lam, rho.support_hi() / lam, jumps)
                            : LineFunction::decaying([rho, lam](double s) { return lam * rho(lam * s); }, rho.decay(),
                                                     jumps, true);
  const HyperbolaMeasure nu{scaled, 2.0 * std::numbers::pi};
  return std::abs(hyperbola_ft(mu, xi1, xi2, cfg) - hyperbola_ft(nu, lam * xi1, lam * xi2, cfg));
}

}  // namespace hup
