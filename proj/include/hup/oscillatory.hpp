#pragma once

// Half-line oscillatory integrals ∫_a^∞ A(t) e^{iωt} dt by half-period panels
// and Euler acceleration of the partial sums.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "hup/errors.hpp"
#include "hup/pv.hpp"
#include "hup/quadrature.hpp"

namespace hup {

using cplx = std::complex<double>;

namespace detail {

// Repeated averaging of the trailing partial sums; returns the apex and the
// spread of the last level as an error proxy.
inline std::pair<cplx, double> euler_average(std::vector<cplx> s, int levels) {
  levels = std::min<int>(levels, static_cast<int>(s.size()) - 1);
  double spread = 0.0;
  for (int l = 0; l < levels; ++l) {
    std::vector<cplx> t(s.size() - 1);
    for (std::size_t i = 0; i + 1 < s.size(); ++i) t[i] = 0.5 * (s[i] + s[i + 1]);
    spread = std::abs(t.back() - t.front());
    s.swap(t);
  }
  return {s.back(), spread};
}

}  // namespace detail

struct OscResult {
  cplx value;
  double error;
};

/// ∫_a^∞ amp(t) e^{iωt} dt for a slowly varying, decaying amplitude.
template <class A>
OscResult oscillatory_tail_result(A&& amp, double omega, double a, const PvConfig& cfg = {}) {
  if (omega == 0.0) throw InvalidInput("oscillatory_tail: frequency must be nonzero");
  const double h = std::numbers::pi / std::abs(omega);
  const int panels = std::max(cfg.osc_tail_panels, 2 * cfg.euler_levels + 2);
  const int keep = cfg.euler_levels + 2;
  QuadOptions qo{.abs_tol = 1e-15, .rel_tol = 1e-13, .max_intervals = 400};
  auto integrand = [&](double t) -> cplx { return cplx(amp(t)) * std::exp(cplx(0.0, omega * t)); };
  std::vector<cplx> partial;
  partial.reserve(keep);
  cplx sum{};
  double qerr = 0.0;
  for (int k = 0; k < panels; ++k) {
    auto r = integrate_adaptive(integrand, a + k * h, a + (k + 1) * h, qo);
    qerr += r.error;
    sum += r.value;
    if (k >= panels - keep) partial.push_back(sum);
  }
  auto [v, spread] = detail::euler_average(partial, cfg.euler_levels);
  return {v, spread + qerr};
}

template <class A>
cplx oscillatory_tail(A&& amp, double omega, double a, const PvConfig& cfg = {}, double accept = 1e-8) {
  auto r = oscillatory_tail_result(amp, omega, a, cfg);
  if (!(r.error <= accept * std::max(1.0, std::abs(r.value))))
    throw NonConvergence("oscillatory_tail: acceleration did not settle", std::abs(r.value), r.error);
  return r.value;
}

/// ∫_1^∞ e^{iπξt}/t dt.
inline cplx integrate_osc_halfline(double xi, const PvConfig& cfg = {}) {
  if (xi == 0.0) throw InvalidInput("integrate_osc_halfline: diverges at xi = 0");
  return oscillatory_tail([](double t) { return 1.0 / t; }, std::numbers::pi * xi, 1.0, cfg);
}

}  // namespace hup
