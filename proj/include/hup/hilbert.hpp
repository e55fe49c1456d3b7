#pragma once

// Hilbert transforms on the line and on the circle ℝ/2ℤ, Szegő projections,
// the involutions J_β, J_β*, periodization Π₂ and the valeur au point.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hup/errors.hpp"
#include "hup/oscillatory.hpp"
#include "hup/pv.hpp"
#include "hup/quadrature.hpp"

namespace hup {

enum class Decay { Compact, InverseSquare, Inverse, Bounded };

inline std::string decay_name(Decay d) {
  switch (d) {
    case Decay::Compact: return "compact";
    case Decay::InverseSquare: return "O(1/t^2)";
    case Decay::Inverse: return "O(1/t)";
    case Decay::Bounded: return "bounded";
  }
  return "";
}

/// A real function on ℝ with a declared decay class and declared jumps.
class LineFunction {
 public:
  using Fn = std::function<double(double)>;

  LineFunction() = default;

  static LineFunction compact(Fn fn, double lo, double hi, std::vector<double> jumps = {}) {
    if (!(lo < hi)) throw InvalidInput("LineFunction: support needs lo < hi");
    LineFunction f(std::move(fn), Decay::Compact, std::move(jumps));
    f.lo_ = lo;
    f.hi_ = hi;
    return f;
  }

  /// Decay is spot-checked by `verify_decay` unless `trusted` is set.
  static LineFunction decaying(Fn fn, Decay d, std::vector<double> jumps = {}, bool trusted = false) {
    if (d == Decay::Compact) throw InvalidInput("LineFunction: use compact() for compact support");
    LineFunction f(std::move(fn), d, std::move(jumps));
    if (!trusted) f.verify_decay();
    return f;
  }

  static LineFunction zero() { return compact([](double) { return 0.0; }, -1.0, 1.0); }

  double operator()(double t) const {
    if (decay_ == Decay::Compact && (t < lo_ || t > hi_)) return 0.0;
    return fn_(t);
  }

  Decay decay() const { return decay_; }
  bool is_compact() const { return decay_ == Decay::Compact; }
  double support_lo() const { return lo_; }
  double support_hi() const { return hi_; }
  const std::vector<double>& jumps() const { return jumps_; }

  /// Jumps plus the support ends.
  std::vector<double> breaks() const {
    std::vector<double> b = jumps_;
    if (is_compact()) {
      b.push_back(lo_);
      b.push_back(hi_);
    }
    return b;
  }

  bool near_jump(double x) const {
    for (double p : jumps_)
      if (std::abs(x - p) <= 1e-10 * std::max(1.0, std::abs(x))) return true;
    return false;
  }

  /// Envelope ratio test at |t| ∈ {10², 10³, 10⁴}: the envelope may shrink by
  /// at most a factor 10 less than the declared rate predicts.
  void verify_decay() const {
    if (decay_ == Decay::Compact) return;
    const double rate = decay_ == Decay::InverseSquare ? 100.0 : (decay_ == Decay::Inverse ? 10.0 : 1.0);
    auto envelope = [&](double t) {
      double m = 0.0;
      for (int k = 0; k < 16; ++k) {
        const double s = t * (1.0 + 0.1 * k / 16.0);
        const double a = std::abs(fn_(s)), b = std::abs(fn_(-s));
        if (!std::isfinite(a) || !std::isfinite(b)) throw InvalidInput("LineFunction: non-finite sample in decay check");
        m = std::max({m, a, b});
      }
      return m;
    };
    double prev = envelope(1e2);
    for (double t : {1e3, 1e4}) {
      const double cur = envelope(t);
      if (cur > 10.0 * prev / rate + 1e-300)
        throw InvalidInput("LineFunction: samples do not decay like the declared class " + decay_name(decay_));
      prev = cur;
    }
  }

 private:
  LineFunction(Fn fn, Decay d, std::vector<double> jumps) : fn_(std::move(fn)), decay_(d), jumps_(std::move(jumps)) {
    std::sort(jumps_.begin(), jumps_.end());
  }

  Fn fn_;
  Decay decay_ = Decay::Compact;
  double lo_ = -std::numeric_limits<double>::infinity();
  double hi_ = std::numeric_limits<double>::infinity();
  std::vector<double> jumps_;
};

/// A 2-periodic function given on the fundamental domain [-1, 1).
class PeriodicFunction {
 public:
  using Fn = std::function<double(double)>;

  PeriodicFunction() = default;
  /// Jumps are positions in [-1, 1); a seam discontinuity is declared as -1.
  explicit PeriodicFunction(Fn fn, std::vector<double> jumps = {}) : fn_(std::move(fn)), jumps_(std::move(jumps)) {
    for (double& p : jumps_) p = wrap(p);
    std::sort(jumps_.begin(), jumps_.end());
  }

  static double wrap(double t) {
    double u = t - 2.0 * std::floor((t + 1.0) / 2.0);
    return u >= 1.0 ? u - 2.0 : u;
  }

  double operator()(double t) const { return fn_(wrap(t)); }
  const std::vector<double>& jumps() const { return jumps_; }
  bool seam_declared() const { return std::find(jumps_.begin(), jumps_.end(), -1.0) != jumps_.end(); }

  /// |f(-1⁺) - f(1⁻)|: must be small unless a seam jump is declared.
  double seam_gap() const { return std::abs(fn_(-1.0 + 1e-9) - fn_(1.0 - 1e-9)); }
  void verify_seam(double tol = 1e-6) const {
    if (!seam_declared() && seam_gap() > tol) throw InvalidInput("PeriodicFunction: undeclared jump across the seam");
  }

 private:
  Fn fn_;
  std::vector<double> jumps_;
};

namespace detail {

inline QuadOptions line_quad(const PvConfig& cfg) { return {.abs_tol = cfg.tol, .rel_tol = 1e-12, .max_intervals = 6000}; }

// ∫ h over ℝ for h decaying at least like 1/t², split at the breaks.
template <class H>
double integrate_line(H&& h, const std::vector<double>& breaks, const PvConfig& cfg) {
  double a = -1.0, b = 1.0;
  for (double p : breaks) {
    a = std::min(a, p);
    b = std::max(b, p);
  }
  a -= 1.0;
  b += 1.0;
  const QuadOptions qo = line_quad(cfg);
  double s = integrate(h, a, b, qo, breaks);
  s += integrate_to_infinity(h, b, qo, std::max(1.0, std::abs(b)));
  s += integrate_from_minus_infinity(h, a, qo, std::max(1.0, std::abs(a)));
  return s;
}

// (1/π) pv ∫ f(t)·[1/(x-t) + extra(t)] dt; extra must make the integrand
// integrable at infinity for the declared decay class.
template <class Extra>
double hilbert_core(const LineFunction& f, double x, Extra&& extra, const PvConfig& cfg) {
  if (f.near_jump(x)) throw JumpPoint("hilbert: x = " + std::to_string(x) + " is a jump of the input");
  auto g = [&](double t) { return f(t) * (1.0 / (x - t) + extra(t)); };
  const std::vector<double> br = f.breaks();
  const QuadOptions qo = line_quad(cfg);
  if (f.is_compact()) {
    const double lo = f.support_lo(), hi = f.support_hi();
    if (x > lo && x < hi) return integrate_pv(g, x, lo, hi, cfg, br) / std::numbers::pi;
    return integrate(g, lo, hi, qo, br) / std::numbers::pi;
  }
  const double w = 1.0;
  double s = integrate_pv(g, x, x - w, x + w, cfg, br);
  const double scale = std::max(1.0, std::abs(x));
  std::vector<double> right, left;
  for (double p : br) (p > x ? right : left).push_back(p);
  s += integrate_to_infinity(g, x + w, qo, scale, right);
  s += integrate_from_minus_infinity(g, x - w, qo, scale, left);
  return s / std::numbers::pi;
}

}  // namespace detail

/// ∫_ℝ f.
inline double line_integral(const LineFunction& f, const PvConfig& cfg = {}) {
  if (f.decay() == Decay::Inverse || f.decay() == Decay::Bounded)
    throw InvalidInput("line_integral: decay class is not integrable");
  if (f.is_compact()) return integrate(f, f.support_lo(), f.support_hi(), detail::line_quad(cfg), f.breaks());
  return detail::integrate_line(f, f.breaks(), cfg);
}

inline double line_l1_norm(const LineFunction& f, const PvConfig& cfg = {}) {
  auto a = [&](double t) { return std::abs(f(t)); };
  if (f.decay() == Decay::Inverse || f.decay() == Decay::Bounded)
    throw InvalidInput("line_l1_norm: decay class is not integrable");
  // Kinks of |f| become breaks; a kink next to a cell end is invisible to the rule.
  std::vector<double> br = f.breaks();
  double lo = f.support_lo(), hi = f.support_hi();
  if (!f.is_compact()) {
    lo = -64.0;
    hi = 64.0;
  }
  for (double z : sign_changes(f, lo, hi, f.breaks(), 512)) br.push_back(z);
  // Flat bump edges fool the global estimate on coarse initial cells.
  for (int k = 1; k < 32; ++k) br.push_back(lo + (hi - lo) * k / 32.0);
  std::sort(br.begin(), br.end());
  if (f.is_compact()) return integrate(a, lo, hi, detail::line_quad(cfg), br);
  return detail::integrate_line(a, br, cfg);
}

/// Hf(x) = (1/π) pv ∫ f(t)/(x-t) dt.
inline double hilbert(const LineFunction& f, double x, const PvConfig& cfg = {}) {
  if (f.decay() == Decay::Bounded) throw InvalidInput("hilbert: bounded inputs need the modified transform");
  return detail::hilbert_core(f, x, [](double) { return 0.0; }, cfg);
}

/// H̃f(x) = (1/π) pv ∫ f(t)[1/(x-t) + t/(1+t²)] dt.
inline double hilbert_modified(const LineFunction& f, double x, const PvConfig& cfg = {}) {
  return detail::hilbert_core(f, x, [](double t) { return t / (1.0 + t * t); }, cfg);
}

/// Hf as a LineFunction of class O(1/t) (compact inputs) or of the input's class.
inline LineFunction hilbert_of(const LineFunction& f, const PvConfig& cfg = {}) {
  const Decay d = f.decay() == Decay::InverseSquare || f.is_compact() ? Decay::Inverse : f.decay();
  return LineFunction::decaying([f, cfg](double x) { return hilbert(f, x, cfg); }, d, f.jumps(), true);
}

inline LineFunction hilbert_modified_of(const LineFunction& f, const PvConfig& cfg = {}) {
  return LineFunction::decaying([f, cfg](double x) { return hilbert_modified(f, x, cfg); }, Decay::Bounded,
                                f.jumps(), true);
}

/// Harmonic extension of H̃f to z = x + iy, y > 0:
/// (1/π) ∫ f(t)[(x-t)/((x-t)²+y²) + t/(1+t²)] dt. It vanishes at z = i.
inline double hilbert_modified_extension(const LineFunction& f, cplx z, const PvConfig& cfg = {}) {
  const double x = z.real(), y = z.imag();
  if (!(y > 0)) throw InvalidInput("hilbert_modified_extension: need Im z > 0");
  auto h = [&](double t) {
    const double d = x - t;
    return f(t) * (d / (d * d + y * y) + t / (1.0 + t * t));
  };
  std::vector<double> br = f.breaks();
  br.push_back(x);
  if (f.is_compact()) return integrate(h, f.support_lo(), f.support_hi(), detail::line_quad(cfg), f.breaks()) / std::numbers::pi;
  return detail::integrate_line(h, br, cfg) / std::numbers::pi;
}

/// c(f) = (1/π) ∫ f/(1+t²).
inline double c_of(const LineFunction& f, const PvConfig& cfg = {}) {
  auto h = [&](double t) { return f(t) / (1.0 + t * t); };
  if (f.is_compact()) return integrate(h, f.support_lo(), f.support_hi(), detail::line_quad(cfg), f.breaks()) / std::numbers::pi;
  return detail::integrate_line(h, f.breaks(), cfg) / std::numbers::pi;
}

/// max over samples of |H̃(H̃f)(x) + f(x) - c(f)|.
inline double double_modified_residual(const LineFunction& f, const std::vector<double>& samples,
                                       const PvConfig& cfg = {}) {
  PvConfig outer = cfg;
  outer.tol = std::max(cfg.tol, 1e-8);
  const LineFunction hf = hilbert_modified_of(f, cfg);
  const double c = c_of(f, cfg);
  double r = 0.0;
  for (double x : samples) r = std::max(r, std::abs(hilbert_modified(hf, x, outer) + f(x) - c));
  return r;
}

/// max over samples of |H(Hf)(x) + f(x)|.
inline double anti_involution_residual(const LineFunction& f, const std::vector<double>& samples,
                                       const PvConfig& cfg = {}) {
  PvConfig outer = cfg;
  outer.tol = std::max(cfg.tol, 1e-8);
  const LineFunction hf = hilbert_of(f, cfg);
  double r = 0.0;
  for (double x : samples) r = std::max(r, std::abs(hilbert(hf, x, outer) + f(x)));
  return r;
}

/// H₂f(x) = ½ pv ∫_{I₁} f(t) cot(π(x-t)/2) dt, integrated over one period
/// centred at the pole.
inline double hilbert_periodic(const PeriodicFunction& f, double x, const PvConfig& cfg = {}) {
  std::vector<double> br;
  for (double p : f.jumps()) {
    const double s = PeriodicFunction::wrap(p - x);
    if (std::abs(s) <= 1e-10) throw JumpPoint("hilbert_periodic: x is a jump of the input");
    if (s > -1.0 + 1e-12) br.push_back(s);
  }
  auto g = [&](double s) { return f(x + s) / std::tan(-0.5 * std::numbers::pi * s); };
  return 0.5 * integrate_pv(g, 0.0, -1.0, 1.0, cfg, br);
}

/// (1/π) pv ∫_{-A}^{A} f(t)/(x-t) dt for the periodic extension of f.
inline double window_hilbert(const PeriodicFunction& f, double x, double A, const PvConfig& cfg = {}) {
  if (!(A > std::abs(x) + 1.0)) throw InvalidInput("window_hilbert: window too small");
  std::vector<double> br;
  for (long k = static_cast<long>(std::floor(-A)); k <= static_cast<long>(std::ceil(A)); ++k) {
    if (k % 2 != 0) br.push_back(static_cast<double>(k));
    for (double p : f.jumps())
      if (p != -1.0) br.push_back(p + 2.0 * k);
  }
  auto g = [&](double t) { return f(t) / (x - t); };
  return integrate_pv(g, x, -A, A, cfg, br) / std::numbers::pi;
}

struct WindowCheck {
  std::vector<double> windows;
  std::vector<double> values;
  double extrapolated = 0.0;
  double target = 0.0;
  double gap = 0.0;
};

/// Symmetric windows A = 2N+1 converge to H₂f(x); Richardson extrapolation in 1/A.
inline WindowCheck periodic_window_check(const PeriodicFunction& f, double x, const std::vector<int>& Ns = {10, 40, 160},
                                         const PvConfig& cfg = {}) {
  if (Ns.size() < 2) throw InvalidInput("periodic_window_check: need at least two windows");
  WindowCheck w;
  std::vector<double> h;
  for (int N : Ns) {
    const double A = 2.0 * N + 1.0;
    w.windows.push_back(A);
    w.values.push_back(window_hilbert(f, x, A, cfg));
    h.push_back(1.0 / A);
  }
  w.extrapolated = detail::neville_at_zero<double>(h, w.values);
  w.target = hilbert_periodic(f, x, cfg);
  w.gap = std::abs(w.extrapolated - w.target);
  return w;
}

/// ½(f + iHf)(x) and ½(f - iHf)(x).
inline cplx szego_plus(const LineFunction& f, double x, const PvConfig& cfg = {}) {
  return 0.5 * cplx(f(x), hilbert(f, x, cfg));
}
inline cplx szego_minus(const LineFunction& f, double x, const PvConfig& cfg = {}) {
  return 0.5 * cplx(f(x), -hilbert(f, x, cfg));
}

/// ∫_ℝ e^{iyt} h(t) dt for h decaying at least like 1/t: central part on
/// [-R, R], accelerated oscillatory tails beyond.
template <class H>
cplx fourier_line(H&& h, double y, double R, const std::vector<double>& breaks = {}, const PvConfig& cfg = {}) {
  if (y == 0.0) throw InvalidInput("fourier_line: frequency must be nonzero");
  auto central = [&](double t) -> cplx { return cplx(h(t)) * std::exp(cplx(0.0, y * t)); };
  std::vector<double> br;
  for (double p : breaks)
    if (p > -R && p < R) br.push_back(p);
  const double period = 2.0 * std::numbers::pi / std::abs(y);
  for (double t = -R + period; t < R; t += period) br.push_back(t);
  QuadOptions qo{.abs_tol = 1e-12, .rel_tol = 1e-12, .max_intervals = 20000};
  auto r = integrate_adaptive(central, -R, R, qo, br);
  if (!r.converged) throw NonConvergence("fourier_line: central part failed", std::abs(r.value), r.error);
  cplx s = r.value;
  s += oscillatory_tail([&](double t) -> cplx { return cplx(h(t)); }, y, R, cfg, 1e-7);
  s += oscillatory_tail([&](double t) -> cplx { return cplx(h(-t)); }, -y, R, cfg, 1e-7);
  return s;
}

/// ∫ e^{iyt} ½(f ± iHf)(t) dt; sign = +1 for the plus projection.
inline cplx szego_fourier(const LineFunction& f, int sign, double y, double R = 20.0, const PvConfig& cfg = {}) {
  auto h = [&](double t) -> cplx { return sign > 0 ? szego_plus(f, t, cfg) : szego_minus(f, t, cfg); };
  return fourier_line(h, y, R, f.breaks(), cfg);
}

/// J_β f(x) = (β/x²) f(-β/x).
inline double involution_J(double beta, const LineFunction& f, double x) {
  if (x == 0.0) throw InvalidInput("involution_J: undefined at 0");
  return beta / (x * x) * f(-beta / x);
}

/// J*_β g(x) = g(-β/x).
inline double involution_Jstar(double beta, const LineFunction& g, double x) {
  if (x == 0.0) throw InvalidInput("involution_Jstar: undefined at 0");
  return g(-beta / x);
}

namespace detail {

inline std::pair<double, double> mirrored_support(double beta, const LineFunction& f) {
  const double lo = f.support_lo(), hi = f.support_hi();
  if (!(lo > 0.0 || hi < 0.0)) throw InvalidInput("involution: compact support must avoid 0");
  const double a = -beta / lo, b = -beta / hi;
  return {std::min(a, b), std::max(a, b)};
}

inline std::vector<double> mirrored_jumps(double beta, const LineFunction& f) {
  std::vector<double> j;
  for (double p : f.jumps())
    if (p != 0.0) j.push_back(-beta / p);
  return j;
}

}  // namespace detail

/// J_β f as a LineFunction; compact inputs must avoid 0, others become O(1/t²).
inline LineFunction apply_J(double beta, const LineFunction& f) {
  if (!(beta > 0)) throw InvalidInput("apply_J: beta must be positive");
  auto fn = [beta, f](double x) { return x == 0.0 ? 0.0 : beta / (x * x) * f(-beta / x); };
  if (f.is_compact()) {
    auto [lo, hi] = detail::mirrored_support(beta, f);
    return LineFunction::compact(fn, lo, hi, detail::mirrored_jumps(beta, f));
  }
  return LineFunction::decaying(fn, Decay::InverseSquare, detail::mirrored_jumps(beta, f), true);
}

/// J*_β g as a LineFunction; compact inputs must avoid 0, others become bounded.
inline LineFunction apply_Jstar(double beta, const LineFunction& g) {
  if (!(beta > 0)) throw InvalidInput("apply_Jstar: beta must be positive");
  auto fn = [beta, g](double x) { return x == 0.0 ? 0.0 : g(-beta / x); };
  if (g.is_compact()) {
    auto [lo, hi] = detail::mirrored_support(beta, g);
    return LineFunction::compact(fn, lo, hi, detail::mirrored_jumps(beta, g));
  }
  return LineFunction::decaying(fn, Decay::Bounded, detail::mirrored_jumps(beta, g), true);
}

struct CommutatorReport {
  double correction = 0.0;  // ⟨φ, 1/(πt)⟩
  double max_residual = 0.0;
  std::vector<double> residuals;
};

/// H(J*_βφ)(x) = J*_β(Hφ)(x) + ⟨φ, 1/(πt)⟩ for φ supported away from 0.
inline CommutatorReport commutator_Jstar_hilbert(double beta, const LineFunction& phi, const std::vector<double>& samples,
                                                 const PvConfig& cfg = {}) {
  if (!phi.is_compact()) throw InvalidInput("commutator_Jstar_hilbert: phi must have compact support");
  const LineFunction jphi = apply_Jstar(beta, phi);
  CommutatorReport rep;
  rep.correction = integrate([&](double t) { return phi(t) / t; }, phi.support_lo(), phi.support_hi(),
                             detail::line_quad(cfg), phi.breaks()) /
                   std::numbers::pi;
  for (double x : samples) {
    if (x == 0.0) throw InvalidInput("commutator_Jstar_hilbert: samples must avoid 0");
    const double lhs = hilbert(jphi, x, cfg);
    const double rhs = hilbert(phi, -beta / x, cfg) + rep.correction;
    rep.residuals.push_back(std::abs(lhs - rhs));
    rep.max_residual = std::max(rep.max_residual, rep.residuals.back());
  }
  return rep;
}

/// c_β(f) = ((β²-1)/π) ∫ t f(t) dt / ((1+t²)(β²+t²)), the value H̃f(iβ).
inline double c_beta(double beta, const LineFunction& f, const PvConfig& cfg = {}) {
  if (!(beta > 0)) throw InvalidInput("c_beta: beta must be positive");
  const double b2 = beta * beta;
  auto h = [&](double t) { return t * f(t) / ((1.0 + t * t) * (b2 + t * t)); };
  double s;
  if (f.is_compact()) s = integrate(h, f.support_lo(), f.support_hi(), detail::line_quad(cfg), f.breaks());
  else s = detail::integrate_line(h, f.breaks(), cfg);
  return (b2 - 1.0) * s / std::numbers::pi;
}

/// max over samples of |J*_β(H̃f)(x) - H̃(J*_βf)(x) - c_β(f)|.
inline double modified_commutator_residual(double beta, const LineFunction& f, const std::vector<double>& samples,
                                           const PvConfig& cfg = {}) {
  const LineFunction jf = apply_Jstar(beta, f);
  const double c = c_beta(beta, f, cfg);
  double r = 0.0;
  for (double x : samples) {
    if (x == 0.0) throw InvalidInput("modified_commutator_residual: samples must avoid 0");
    r = std::max(r, std::abs(hilbert_modified(f, -beta / x, cfg) - hilbert_modified(jf, x, cfg) - c));
  }
  return r;
}

struct PeriodizeOptions {
  long terms = 64;
  double tol = 1e-9;
};

/// Π₂f(x) = Σ_j f(x+2j). Compact inputs sum exactly; O(1/t²) inputs add the
/// midpoint-rule tail ½∫ f beyond the last term and are certified by doubling.
inline double periodize(const LineFunction& f, double x, const PeriodizeOptions& opt = {}) {
  if (f.is_compact()) {
    const long j0 = static_cast<long>(std::floor((f.support_lo() - x) / 2.0)) - 1;
    const long j1 = static_cast<long>(std::ceil((f.support_hi() - x) / 2.0)) + 1;
    double s = 0.0;
    for (long j = j0; j <= j1; ++j) s += f(x + 2.0 * j);
    return s;
  }
  if (f.decay() != Decay::InverseSquare) throw InvalidInput("periodize: needs compact support or O(1/t^2) decay");
  QuadOptions qo{.abs_tol = 1e-14, .rel_tol = 1e-12, .max_intervals = 2000};
  auto partial = [&](long J) {
    double s = 0.0;
    for (long j = -J; j <= J; ++j) s += f(x + 2.0 * j);
    const double r = x + 2.0 * J + 1.0, l = x - 2.0 * J - 1.0;
    s += 0.5 * integrate_adaptive_to_infinity(f, r, qo, std::abs(r)).value;
    s += 0.5 * integrate_adaptive_to_infinity([&](double t) { return f(-t); }, -l, qo, std::abs(l)).value;
    return s;
  };
  const double a = partial(opt.terms), b = partial(2 * opt.terms);
  if (std::abs(a - b) > opt.tol * std::max(1.0, std::abs(b)))
    throw TailNotControlled("periodize: tail not controlled, gap " + std::to_string(std::abs(a - b)));
  return b;
}

inline PeriodicFunction periodized(const LineFunction& f, const PeriodizeOptions& opt = {}) {
  std::vector<double> j;
  for (double p : f.breaks())
    if (std::isfinite(p) && f(p - 1e-12) != f(p + 1e-12)) j.push_back(p);
  return PeriodicFunction([f, opt](double x) { return periodize(f, x, opt); }, j);
}

struct FourierGap {
  int n = 0;
  cplx periodic;
  cplx line;
  double gap = 0.0;
};

/// ∫_{I₁} e^{iπnt} Π₂f dt against ∫_ℝ e^{iπnt} f dt, compact f.
inline std::vector<FourierGap> periodization_fourier_check(const LineFunction& f, const std::vector<int>& ns,
                                                           const PvConfig& cfg = {}) {
  if (!f.is_compact()) throw InvalidInput("periodization_fourier_check: compact input required");
  const PeriodicFunction p = periodized(f);
  std::vector<double> br;
  for (double q : f.breaks()) br.push_back(PeriodicFunction::wrap(q));
  QuadOptions qo{.abs_tol = 1e-13, .rel_tol = 1e-13, .max_intervals = 4000};
  std::vector<FourierGap> out;
  for (int n : ns) {
    const double w = std::numbers::pi * n;
    auto ep = [&](double t) { return cplx(p(t)) * std::exp(cplx(0.0, w * t)); };
    auto el = [&](double t) { return cplx(f(t)) * std::exp(cplx(0.0, w * t)); };
    FourierGap g{n, integrate(ep, -1.0, 1.0, qo, br), integrate(el, f.support_lo(), f.support_hi(), qo, f.breaks())};
    g.gap = std::abs(g.periodic - g.line);
    out.push_back(g);
  }
  (void)cfg;
  return out;
}

/// ‖Π₂f‖_{L¹(I₁)} and ‖f‖_{L¹(ℝ)}.
inline std::pair<double, double> periodization_norms(const LineFunction& f, const PvConfig& cfg = {}) {
  const PeriodicFunction p = periodized(f);
  std::vector<double> br;
  for (double q : p.jumps()) br.push_back(q);
  QuadOptions qo{.abs_tol = 1e-12, .rel_tol = 1e-12, .max_intervals = 4000};
  const double lhs = integrate([&](double t) { return std::abs(p(t)); }, -1.0, 1.0, qo, br);
  return {lhs, line_l1_norm(f, cfg)};
}

struct IntertwiningReport {
  double line_side = 0.0;      // ∫_ℝ φ·Hg
  double periodic_side = 0.0;  // ∫_{I₁} φ·H₂(Π₂g)
  double gap = 0.0;
};

/// ⟨φ, Π₂(Hg)⟩_{I₁} = ⟨φ, H₂(Π₂g)⟩_{I₁} for 2-periodic φ and compactly
/// supported zero-mean g. The left side is ∫_ℝ φ·Hg truncated to |t| ≤ L.
inline IntertwiningReport periodization_hilbert_check(const PeriodicFunction& phi, const LineFunction& g,
                                                      double L = 400.0, const PvConfig& cfg = {}) {
  if (!g.is_compact()) throw InvalidInput("periodization_hilbert_check: g must have compact support");
  const double mean = line_integral(g, cfg);
  if (std::abs(mean) > 1e-8) throw InvalidInput("periodization_hilbert_check: g must have zero mean");
  QuadOptions qo{.abs_tol = 1e-11, .rel_tol = 1e-12, .max_intervals = 20000};
  std::vector<double> br = g.breaks();
  for (long k = static_cast<long>(-L); k <= static_cast<long>(L); ++k) br.push_back(static_cast<double>(k));
  IntertwiningReport rep;
  rep.line_side = integrate([&](double t) { return phi(t) * hilbert(g, t, cfg); }, -L, L, qo, br);
  const PeriodicFunction pg = periodized(g);
  std::vector<double> pb(pg.jumps());
  pb.push_back(0.0);
  rep.periodic_side = integrate([&](double x) { return phi(x) * hilbert_periodic(pg, x, cfg); }, -1.0, 1.0, qo, pb);
  rep.gap = std::abs(rep.line_side - rep.periodic_side);
  return rep;
}

/// C^∞ cutoff equal to 1 on |t - x| ≤ r1 and 0 on |t - x| ≥ r2.
struct SmoothCutoff {
  double r1 = 0.5;
  double r2 = 1.0;

  double operator()(double s) const {
    s = std::abs(s);
    if (s <= r1) return 1.0;
    if (s >= r2) return 0.0;
    const double u = (r2 - s) / (r2 - r1);
    const double a = std::exp(-1.0 / u), b = std::exp(-1.0 / (1.0 - u));
    return a / (a + b);
  }
};

struct PevOptions {
  std::vector<SmoothCutoff> cutoffs{{0.5, 1.0}, {1.0, 2.0}};
  double eps_coarse = 1e-2;
  double eps_fine = 1e-3;
};

struct PevReport {
  double pointwise = 0.0;            // f(x) + Hg(x)
  std::vector<double> limit_routes;  // one per cutoff
  double route_gap = 0.0;
  double cutoff_gap = 0.0;
};

namespace detail {

// ⟨χP_{x+iε}, f⟩ - ⟨H[χP_{x+iε}], g⟩.
inline double pev_pairing(const LineFunction& f, const LineFunction& g, double x, double eps, const SmoothCutoff& chi,
                          const PvConfig& cfg) {
  auto cp = [=](double t) {
    const double d = t - x;
    return chi(d) * eps / (std::numbers::pi * (d * d + eps * eps));
  };
  std::vector<double> peak{x, x - chi.r1, x + chi.r1};
  for (double k : {1.0, 10.0, 100.0}) {
    peak.push_back(x - k * eps);
    peak.push_back(x + k * eps);
  }
  QuadOptions qo{.abs_tol = 1e-12, .rel_tol = 1e-12, .max_intervals = 8000};
  std::vector<double> fb = f.breaks();
  fb.insert(fb.end(), peak.begin(), peak.end());
  const double first = integrate([&](double t) { return cp(t) * f(t); }, x - chi.r2, x + chi.r2, qo, fb);

  const LineFunction kernel = LineFunction::compact(cp, x - chi.r2, x + chi.r2, {});
  double lo, hi;
  if (g.is_compact()) {
    lo = g.support_lo();
    hi = g.support_hi();
  } else {
    throw InvalidInput("valeur_au_point: g must have compact support");
  }
  std::vector<double> gb = g.breaks();
  gb.insert(gb.end(), peak.begin(), peak.end());
  gb.push_back(x - chi.r2);
  gb.push_back(x + chi.r2);
  auto integrand = [&](double s) {
    const double gv = g(s);
    return gv == 0.0 ? 0.0 : gv * hilbert(kernel, s, cfg);
  };
  const double second = integrate(integrand, lo, hi, qo, gb);
  return first - second;
}

}  // namespace detail

/// pev of u = f + Hg at x by the pointwise formula and by Poisson pairings
/// extrapolated linearly to ε = 0, for each cutoff.
inline PevReport valeur_au_point(const LineFunction& f, const LineFunction& g, double x, const PevOptions& opt = {},
                                 const PvConfig& cfg = {}) {
  if (!g.is_compact()) throw InvalidInput("valeur_au_point: g must have compact support");
  if (std::abs(line_integral(g, cfg)) > 1e-8) throw InvalidInput("valeur_au_point: g must have zero mean");
  if (opt.cutoffs.empty()) throw InvalidInput("valeur_au_point: need at least one cutoff");
  if (!(opt.eps_fine > 0 && opt.eps_fine < opt.eps_coarse)) throw InvalidInput("valeur_au_point: bad radii");
  PevReport rep;
  rep.pointwise = f(x) + hilbert(g, x, cfg);
  const double k = opt.eps_coarse / opt.eps_fine;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const SmoothCutoff& chi : opt.cutoffs) {
    const double uc = detail::pev_pairing(f, g, x, opt.eps_coarse, chi, cfg);
    const double uf = detail::pev_pairing(f, g, x, opt.eps_fine, chi, cfg);
    const double v = (k * uf - uc) / (k - 1.0);
    rep.limit_routes.push_back(v);
    rep.route_gap = std::max(rep.route_gap, std::abs(v - rep.pointwise));
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  rep.cutoff_gap = hi - lo;
  return rep;
}

}  // namespace hup
