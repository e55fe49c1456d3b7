#pragma once

// Special functions: x^{-1/2}J₁(2√x), sine/cosine integral tails, digamma and
// trigamma on the positive axis.

#include <cmath>
#include <algorithm>
#include <complex>
#include <limits>
#include <numbers>
#include <utility>

#include "hup/errors.hpp"

namespace hup {

/// ψ(x) for x > 0.
inline double digamma(double x) {
  if (!(x > 0)) throw InvalidInput("digamma: argument must be positive");
  double r = 0.0;
  while (x < 10.0) {
    r -= 1.0 / x;
    x += 1.0;
  }
  const double i2 = 1.0 / (x * x);
  double s = i2 * (1.0 / 12 - i2 * (1.0 / 120 - i2 * (1.0 / 252 - i2 * (1.0 / 240 - i2 * (1.0 / 132 - i2 * (691.0 / 32760 - i2 / 12))))));
  return r + std::log(x) - 0.5 / x - s;
}

/// ψ₁(x) = Σ_{k≥0} (x+k)^{-2} for x > 0.
inline double trigamma(double x) {
  if (!(x > 0)) throw InvalidInput("trigamma: argument must be positive");
  double r = 0.0;
  while (x < 10.0) {
    r += 1.0 / (x * x);
    x += 1.0;
  }
  const double i = 1.0 / x, i2 = i * i;
  double s = i + 0.5 * i2 +
             i * i2 * (1.0 / 6 - i2 * (1.0 / 30 - i2 * (1.0 / 42 - i2 * (1.0 / 30 - i2 * (5.0 / 66 - i2 * (691.0 / 2730 - i2 * 7.0 / 6))))));
  return r + s;
}

struct SiCi {
  double si;  // -∫_x^∞ sin(y)/y dy
  double ci;  // -∫_x^∞ cos(y)/y dy
};

/// Power series below x = 2, continued fraction for E₁(ix) beyond.
inline SiCi sici(double x) {
  if (!(x > 0)) throw InvalidInput("sici: argument must be positive");
  constexpr double euler_gamma = 0.57721566490153286061;
  if (x <= 2.0) {
    long double sum_s = 0, sum_c = 0, term = 1;  // term = x^k / k!
    long double xs = x;
    for (int k = 1; k < 60; ++k) {
      term *= xs / k;
      if (k % 2 == 1) {
        long double t = term / k;
        sum_s += ((k / 2) % 2 == 0) ? t : -t;
      } else {
        long double t = term / k;
        sum_c += ((k / 2) % 2 == 0) ? t : -t;
      }
      if (term < 1e-22L) break;
    }
    double si_full = static_cast<double>(sum_s);
    double ci = euler_gamma + std::log(x) + static_cast<double>(sum_c);
    return {si_full - std::numbers::pi / 2, ci};
  }
  // Modified Lentz on E₁(ix) = e^{-ix} · 1/(1+ix- 1/(3+ix- 4/(5+ix- ...)))
  using C = std::complex<double>;
  constexpr double tiny = 1e-300;
  C b(1.0, x);
  C c = 1.0 / tiny;
  C d = 1.0 / b;
  C h = d;
  for (int i = 2; i < 10000; ++i) {
    double a = -static_cast<double>(i - 1) * (i - 1);
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    C del = c * d;
    h *= del;
    if (std::abs(del.real() - 1.0) + std::abs(del.imag()) < 1e-16) break;
  }
  h *= C(std::cos(x), -std::sin(x));
  return {h.imag(), -h.real()};
}

/// x^{-1/2} J₁(2√x) = Σ_{j≥0} (-1)^j x^j / (j!(j+1)!).
inline double bessel_j1_ratio_series(double x) {
  long double term = 1, sum = 1, xs = x;
  for (int j = 1; j < 400; ++j) {
    term *= -xs / (static_cast<long double>(j) * (j + 1));
    sum += term;
    if (std::abs(term) < 1e-21L * std::max<long double>(1, std::abs(sum)) && j > xs) break;
  }
  return static_cast<double>(sum);
}

/// Hankel asymptotic expansion of J₁(z), z = 2√x, divided by √x.
inline double bessel_j1_ratio_asymptotic(double x) {
  const double z = 2.0 * std::sqrt(x);
  const double mu = 4.0;
  double p = 0, q = 0, a = 1.0, zk = 1.0, last = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 60; ++k) {
    double t = a / zk;
    if (std::abs(t) > last) break;
    last = std::abs(t);
    int s = (k / 2) % 2 == 0 ? 1 : -1;
    if (k % 2 == 0) p += s * t;
    else q += s * t;
    if (last < 1e-17) break;
    a *= (mu - (2.0 * k + 1) * (2.0 * k + 1)) / ((k + 1) * 8.0);
    zk *= z;
  }
  const double chi = z - 0.75 * std::numbers::pi;
  const double j1 = std::sqrt(2.0 / (std::numbers::pi * z)) * (p * std::cos(chi) - q * std::sin(chi));
  return j1 / std::sqrt(x);
}

inline double bessel_j1_ratio(double x) {
  if (!(x >= 0)) throw InvalidInput("bessel_j1_ratio: argument must be nonnegative");
  return x <= 30.0 ? bessel_j1_ratio_series(x) : bessel_j1_ratio_asymptotic(x);
}

/// Root of a sign-changing f on [a, b] by bisection.
template <class F>
double bisect_root(F&& f, double a, double b, double tol = 1e-14) {
  double fa = f(a), fb = f(b);
  if (fa == 0) return a;
  if (fb == 0) return b;
  if ((fa > 0) == (fb > 0)) throw InvalidInput("bisect_root: no sign change on the bracket");
  for (int it = 0; it < 200 && b - a > tol * std::max(1.0, std::abs(a)); ++it) {
    const double m = 0.5 * (a + b), fm = f(m);
    if (fm == 0) return m;
    if ((fm > 0) == (fa > 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

/// k-th positive zero of x^{-1/2}J₁(2√x), k ≥ 1, bracketed on a 1/8 grid.
inline double bessel_j1_ratio_zero(int k) {
  if (k < 1) throw InvalidInput("bessel_j1_ratio_zero: k must be >= 1");
  double a = 0.125, fa = bessel_j1_ratio(a);
  int found = 0;
  for (;;) {
    const double b = a + 0.125, fb = bessel_j1_ratio(b);
    if ((fa > 0) != (fb > 0) && ++found == k) return bisect_root(bessel_j1_ratio, a, b);
    a = b;
    fa = fb;
  }
}

}  // namespace hup
