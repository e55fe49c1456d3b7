#pragma once

// Principal-value integrals by symmetric excision and extrapolation in the
// excision radius.

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "hup/errors.hpp"
#include "hup/quadrature.hpp"

namespace hup {

struct PvConfig {
  std::vector<double> eps_schedule{1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  int extrapolation_order = 2;
  int osc_tail_panels = 200;
  int euler_levels = 20;
  double tol = 1e-10;

  void validate() const {
    if (eps_schedule.size() < 2) throw InvalidInput("PvConfig: need at least two excision radii");
    for (std::size_t i = 0; i < eps_schedule.size(); ++i) {
      if (!(eps_schedule[i] > 0)) throw InvalidInput("PvConfig: radii must be positive");
      if (i && !(eps_schedule[i] < eps_schedule[i - 1]))
        throw InvalidInput("PvConfig: radii must decrease strictly");
    }
    if (extrapolation_order < 1) throw InvalidInput("PvConfig: extrapolation order must be >= 1");
  }
};

template <class T>
struct PvResult {
  T value{};
  double error = 0.0;
};

namespace detail {

// Neville evaluation at 0 of the polynomial through (h[i], v[i]).
template <class T>
T neville_at_zero(std::span<const double> h, std::span<const T> v) {
  std::vector<T> p(v.begin(), v.end());
  const std::size_t n = p.size();
  for (std::size_t m = 1; m < n; ++m)
    for (std::size_t i = 0; i + m < n; ++i)
      p[i] = (h[i + m] * p[i] - h[i] * p[i + 1]) / (h[i + m] - h[i]);
  return p[0];
}

}  // namespace detail

/// pv ∫_a^b g(t) dt where g carries a simple pole at c. Breakpoints mark jumps
/// of g away from c; they bound the excision window.
template <class G>
auto integrate_pv_result(G&& g, double c, double a, double b, const PvConfig& cfg = {},
                         std::span<const double> breaks = {}) -> PvResult<detail::result_t<G>> {
  using T = detail::result_t<G>;
  cfg.validate();
  if (!(c > a && c < b)) throw InvalidInput("integrate_pv: singularity must lie inside the interval");
  double room = std::min(c - a, b - c);
  for (double p : breaks)
    if (p != c) room = std::min(room, std::abs(p - c));
  const double delta = 0.5 * std::min(room, 1.0);

  // Excision radii, scaled down when the window is narrower than the schedule.
  std::vector<double> eps = cfg.eps_schedule;
  if (eps.front() >= delta) {
    double s = 0.5 * delta / eps.front();
    for (double& e : eps) e *= s;
  }

  QuadOptions qo{.abs_tol = cfg.tol, .rel_tol = 1e-13, .max_intervals = 4000};
  std::vector<double> outer_breaks(breaks.begin(), breaks.end());
  outer_breaks.push_back(c - delta);
  outer_breaks.push_back(c + delta);
  double qerr = 0.0;
  auto piece = [&](double lo, double hi) {
    auto r = integrate_adaptive(g, lo, hi, qo, outer_breaks);
    qerr += r.error;
    if (!r.converged) throw NonConvergence("integrate_pv: regular part failed", std::abs(r.value), r.error);
    return r.value;
  };
  T outer = piece(a, c - delta) + piece(c + delta, b);

  // Near part folded about c; nested shells accumulate ∫_{eps_k}^{delta}.
  auto folded = [&](double u) -> T { return g(c - u) + g(c + u); };
  std::vector<T> near(eps.size());
  T acc{};
  double hi = delta;
  for (std::size_t k = 0; k < eps.size(); ++k) {
    auto r = integrate_adaptive(folded, eps[k], hi, qo);
    qerr += r.error;
    acc += r.value;
    near[k] = acc;
    hi = eps[k];
  }

  const std::size_t m = std::min<std::size_t>(eps.size(), cfg.extrapolation_order + 1);
  std::span<const double> he(eps);
  std::span<const T> hv(near);
  T best = detail::neville_at_zero<T>(he.last(m), hv.last(m));
  T prev = detail::neville_at_zero<T>(he.subspan(he.size() - m - 1, m), hv.subspan(hv.size() - m - 1, m));
  PvResult<T> out;
  out.value = outer + best;
  out.error = std::abs(best - prev) + qerr;
  return out;
}

/// Throws NonConvergence when the extrapolated values do not settle within
/// `accept` (absolute, scaled by the magnitude of the result).
template <class G>
auto integrate_pv(G&& g, double c, double a, double b, const PvConfig& cfg = {},
                  std::span<const double> breaks = {}, double accept = 1e-7) {
  auto r = integrate_pv_result(g, c, a, b, cfg, breaks);
  if (!(r.error <= accept * std::max(1.0, std::abs(r.value))) || !std::isfinite(std::abs(r.value)))
    throw NonConvergence("integrate_pv: excision limit did not stabilize", std::abs(r.value), r.error);
  return r.value;
}

}  // namespace hup
