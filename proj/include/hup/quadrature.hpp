#pragma once

// Adaptive composite Gauss-Legendre quadrature on finite and half-infinite ranges.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <queue>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "hup/errors.hpp"

namespace hup {

/// Nodes and weights of an n-point rule on [-1, 1], nodes ascending.
struct QuadRule {
  std::vector<double> x;
  std::vector<double> w;
};

inline QuadRule gauss_legendre(int n) {
  if (n < 1) throw InvalidInput("gauss_legendre: n must be positive");
  QuadRule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double pn = (n == 1) ? x : p1;
      double pm = (n == 1) ? 1.0 : p0;
      dp = n * (x * pn - pm) / (x * x - 1.0);
      double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node for the weight.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    double pn = (n == 1) ? x : p1;
    double pm = (n == 1) ? 1.0 : p0;
    dp = n * (x * pn - pm) / (x * x - 1.0);
    r.x[n - 1 - i] = x;
    r.w[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

namespace detail {

template <int N>
const QuadRule& cached_rule() {
  static const QuadRule rule = gauss_legendre(N);
  return rule;
}

template <class F>
using result_t = std::decay_t<std::invoke_result_t<F&, double>>;

}  // namespace detail

struct QuadOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-12;
  int max_intervals = 4000;
};

template <class T>
struct QuadResult {
  T value{};
  double error = 0.0;
  long evaluations = 0;
  bool converged = true;
};

/// Fixed rule mapped to [a, b].
template <class F>
auto fixed_gauss(F&& f, double a, double b, const QuadRule& rule) {
  using T = detail::result_t<F>;
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  T s{};
  for (std::size_t k = 0; k < rule.x.size(); ++k) s += rule.w[k] * f(c + h * rule.x[k]);
  return T(s * h);
}

/// Global adaptive bisection with a 10-point Gauss rule per cell. The error of
/// a cell is estimated by comparing its rule against the rule on its halves.
template <class F>
auto integrate_adaptive(F&& f, double a, double b, const QuadOptions& opt = {},
                        std::span<const double> breaks = {}) -> QuadResult<detail::result_t<F>> {
  using T = detail::result_t<F>;
  QuadResult<T> out;
  if (a == b) return out;
  double sign = 1.0;
  if (a > b) {
    std::swap(a, b);
    sign = -1.0;
  }
  const QuadRule& rule = detail::cached_rule<10>();
  auto g10 = [&](double lo, double hi) {
    out.evaluations += 10;
    return fixed_gauss(f, lo, hi, rule);
  };
  struct Cell {
    double lo, hi;
    T left, right;
    double err;
    bool operator<(const Cell& o) const { return err < o.err; }
  };
  auto make = [&](double lo, double hi, T whole) {
    double mid = 0.5 * (lo + hi);
    Cell c{lo, hi, g10(lo, mid), g10(mid, hi), 0.0};
    c.err = std::abs(whole - (c.left + c.right));
    return c;
  };

  std::vector<double> pts{a};
  for (double p : breaks)
    if (p > a && p < b) pts.push_back(p);
  pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  std::priority_queue<Cell> heap;
  std::vector<Cell> frozen;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    heap.push(make(pts[i], pts[i + 1], g10(pts[i], pts[i + 1])));

  auto totals = [&](T& value, double& err) {
    value = T{};
    err = 0.0;
    auto copy = heap;
    while (!copy.empty()) {
      value += copy.top().left + copy.top().right;
      err += copy.top().err;
      copy.pop();
    }
    for (const Cell& c : frozen) {
      value += c.left + c.right;
      err += c.err;
    }
  };

  T value{};
  double err = 0.0;
  totals(value, err);
  long cells = static_cast<long>(heap.size());
  int since_sync = 0;
  while (!heap.empty() && err > std::max(opt.abs_tol, opt.rel_tol * std::abs(value))) {
    if (cells >= opt.max_intervals) break;
    Cell worst = heap.top();
    heap.pop();
    double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi) ||
        (worst.hi - worst.lo) < 64 * std::numeric_limits<double>::epsilon() *
                                    std::max(1.0, std::abs(mid))) {
      frozen.push_back(worst);
      continue;
    }
    Cell l = make(worst.lo, mid, worst.left);
    Cell r = make(mid, worst.hi, worst.right);
    value += (l.left + l.right + r.left + r.right) - (worst.left + worst.right);
    err += l.err + r.err - worst.err;
    heap.push(l);
    heap.push(r);
    ++cells;
    if (++since_sync == 200) {
      totals(value, err);
      since_sync = 0;
    }
  }
  totals(value, err);
  out.value = T(sign * value);
  out.error = err;
  out.converged = err <= std::max(opt.abs_tol, opt.rel_tol * std::abs(value)) &&
                  std::isfinite(std::abs(value));
  return out;
}

/// Throwing front end of integrate_adaptive.
template <class F>
auto integrate(F&& f, double a, double b, const QuadOptions& opt = {},
               std::span<const double> breaks = {}) -> detail::result_t<F> {
  auto r = integrate_adaptive(f, a, b, opt, breaks);
  if (!r.converged)
    throw NonConvergence("integrate: tolerance not reached on [" + std::to_string(a) + ", " +
                             std::to_string(b) + "]",
                         std::abs(r.value), r.error);
  return r.value;
}

/// ∫_a^∞ f through t = a + L·u/(1-u). Intended for integrands decaying at
/// least like t^{-1-δ}; oscillatory integrands belong in oscillatory.hpp.
template <class F>
auto integrate_adaptive_to_infinity(F&& f, double a, const QuadOptions& opt = {}, double scale = 1.0,
                                    std::span<const double> breaks = {}) {
  using T = detail::result_t<F>;
  auto g = [&](double u) -> T {
    double v = 1.0 - u;
    return T(f(a + scale * u / v) * (scale / (v * v)));
  };
  std::vector<double> ub;
  for (double t : breaks)
    if (t > a) ub.push_back((t - a) / (scale + t - a));
  return integrate_adaptive(g, 0.0, 1.0, opt, ub);
}

template <class F>
auto integrate_to_infinity(F&& f, double a, const QuadOptions& opt = {}, double scale = 1.0,
                           std::span<const double> breaks = {}) {
  auto r = integrate_adaptive_to_infinity(f, a, opt, scale, breaks);
  if (!r.converged)
    throw NonConvergence("integrate_to_infinity: tolerance not reached", std::abs(r.value), r.error);
  return r.value;
}

/// ∫_{-∞}^b f, by reflection.
template <class F>
auto integrate_from_minus_infinity(F&& f, double b, const QuadOptions& opt = {}, double scale = 1.0,
                                   std::span<const double> breaks = {}) {
  std::vector<double> rb;
  for (double t : breaks) rb.push_back(-t);
  return integrate_to_infinity([&](double t) { return f(-t); }, -b, opt, scale, rb);
}

/// Sign changes of f located by sampling each segment between breaks and
/// bisecting; lobes thinner than the sample spacing may be missed.
template <class F>
std::vector<double> sign_changes(F&& f, double a, double b, std::span<const double> breaks = {},
                                 int per_segment = 32) {
  std::vector<double> pts{a};
  for (double p : breaks)
    if (p > a && p < b) pts.push_back(p);
  pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double lo = pts[i], hi = pts[i + 1];
    if (!(hi > lo)) continue;
    double x0 = 0.0, f0 = std::numeric_limits<double>::quiet_NaN();
    for (int k = 0; k <= per_segment; ++k) {
      const double x = lo + (hi - lo) * k / per_segment;
      const double fx = static_cast<double>(f(x));
      if (!std::isfinite(fx) || fx == 0.0) continue;
      if (std::isfinite(f0) && (fx > 0) != (f0 > 0)) {
        double l = x0, r = x, fl = f0;
        for (int it = 0; it < 200 && r - l > 4 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(l));
             ++it) {
          const double m = 0.5 * (l + r), fm = static_cast<double>(f(m));
          if (fm == 0.0) {
            l = r = m;
            break;
          }
          if ((fm > 0) == (fl > 0)) {
            l = m;
            fl = fm;
          } else {
            r = m;
          }
        }
        out.push_back(0.5 * (l + r));
      }
      x0 = x;
      f0 = fx;
    }
  }
  return out;
}

/// ∫ |f| with the sign changes of f added to the breaks, so the kinks of |f|
/// sit on cell boundaries.
template <class F>
QuadResult<double> integrate_abs_adaptive(F&& f, double a, double b, const QuadOptions& opt = {},
                                          std::span<const double> breaks = {}, int per_segment = 32) {
  std::vector<double> br(breaks.begin(), breaks.end());
  for (double z : sign_changes(f, a, b, breaks, per_segment)) br.push_back(z);
  return integrate_adaptive([&](double x) { return std::abs(static_cast<double>(f(x))); }, a, b, opt, br);
}

}  // namespace hup
