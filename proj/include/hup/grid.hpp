#pragma once

// Composite Gauss-Legendre grids and sampled functions carried on them.

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hup/errors.hpp"
#include "hup/quadrature.hpp"

namespace hup {

/// Uniform base panels of width (b-a)/panels, split at breakpoints, with the
/// outermost panels subdivided geometrically toward a and b.
struct GridSpec {
  double a = -1.0;
  double b = 1.0;
  int panels = 32;
  int order = 12;
  int grade_left = 30;
  int grade_right = 30;

  static GridSpec unit_symmetric() { return {}; }
  static GridSpec unit_positive() { return {0.0, 1.0, 16, 12, 24, 24}; }
};

class Grid {
 public:
  explicit Grid(const GridSpec& spec, std::span<const double> breaks = {}) : spec_(spec) {
    if (!(spec.a < spec.b)) throw InvalidInput("Grid: need a < b");
    if (spec.panels < 1 || spec.order < 2) throw InvalidInput("Grid: need panels >= 1 and order >= 2");
    rule_ = gauss_legendre(spec.order);
    build_edges(breaks);
    const int n = spec.order;
    bary_.resize(n);
    for (int k = 0; k < n; ++k)
      bary_[k] = ((k % 2) ? -1.0 : 1.0) * std::sqrt((1.0 - rule_.x[k] * rule_.x[k]) * rule_.w[k]);
    for (std::size_t p = 0; p + 1 < edges_.size(); ++p) {
      const double c = 0.5 * (edges_[p] + edges_[p + 1]), h = 0.5 * (edges_[p + 1] - edges_[p]);
      for (int k = 0; k < n; ++k) {
        nodes_.push_back(c + h * rule_.x[k]);
        weights_.push_back(h * rule_.w[k]);
      }
    }
    if (nodes_.size() < 8) throw InvalidInput("Grid: fewer than 8 nodes");
  }

  double a() const { return spec_.a; }
  double b() const { return spec_.b; }
  const GridSpec& spec() const { return spec_; }
  int order() const { return spec_.order; }
  std::size_t size() const { return nodes_.size(); }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<double>& edges() const { return edges_; }
  const std::vector<double>& breaks() const { return breaks_; }

  std::size_t panel_of(double x) const {
    auto it = std::upper_bound(edges_.begin(), edges_.end(), x);
    std::size_t p = (it == edges_.begin()) ? 0 : static_cast<std::size_t>(it - edges_.begin()) - 1;
    return std::min(p, edges_.size() - 2);
  }

  /// Panel-local barycentric Lagrange interpolation of node values.
  double interpolate(std::span<const double> values, double x) const {
    const std::size_t p = panel_of(x);
    const double lo = edges_[p], hi = edges_[p + 1];
    const double t = (2.0 * x - lo - hi) / (hi - lo);
    const int n = spec_.order;
    const double* v = values.data() + p * n;
    double num = 0.0, den = 0.0;
    for (int k = 0; k < n; ++k) {
      const double d = t - rule_.x[k];
      if (d == 0.0) return v[k];
      const double c = bary_[k] / d;
      num += c * v[k];
      den += c;
    }
    return num / den;
  }

 private:
  void build_edges(std::span<const double> breaks) {
    const double a = spec_.a, b = spec_.b;
    const double tiny = 1e-12 * (b - a);
    std::vector<double> seg{a, b};
    for (double p : breaks)
      if (p > a + tiny && p < b - tiny) seg.push_back(p);
    std::sort(seg.begin(), seg.end());
    std::vector<double> merged{seg.front()};
    for (std::size_t i = 1; i < seg.size(); ++i)
      if (seg[i] - merged.back() > tiny) merged.push_back(seg[i]);
    if (merged.back() != b) merged.back() = b;
    breaks_.assign(merged.begin() + 1, merged.end() - 1);

    const double h = (b - a) / spec_.panels;
    std::vector<double> e{a};
    for (std::size_t s = 0; s + 1 < merged.size(); ++s) {
      const double lo = merged[s], hi = merged[s + 1];
      const int m = std::max(1, static_cast<int>(std::ceil((hi - lo) / h - 1e-9)));
      for (int i = 1; i < m; ++i) e.push_back(lo + i * (hi - lo) / m);
      e.push_back(hi);
    }
    const double w0 = e[1] - e[0], w1 = e[e.size() - 1] - e[e.size() - 2];
    for (int l = 1; l <= spec_.grade_left; ++l) e.push_back(a + w0 * std::ldexp(1.0, -l));
    for (int l = 1; l <= spec_.grade_right; ++l) e.push_back(b - w1 * std::ldexp(1.0, -l));
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    edges_ = std::move(e);
  }

  GridSpec spec_;
  QuadRule rule_;
  std::vector<double> edges_, nodes_, weights_, bary_, breaks_;
};

/// Named analytic functions that survive operator application exactly.
struct ClosedForm {
  enum class Kind { Lambda1, Kappa, F0, Indicator, Monomial };
  Kind kind = Kind::Monomial;
  double p = 0.0;  // κ: α; indicator: left end; monomial: coefficient
  double q = 0.0;  // indicator: right end
  int n = 0;       // monomial degree

  static ClosedForm lambda1() { return {Kind::Lambda1}; }
  static ClosedForm kappa(double alpha) { return {Kind::Kappa, alpha}; }
  static ClosedForm f0() { return {Kind::F0}; }
  static ClosedForm indicator(double lo, double hi) { return {Kind::Indicator, lo, hi}; }
  static ClosedForm monomial(int degree, double coeff = 1.0) { return {Kind::Monomial, coeff, 0.0, degree}; }
  static ClosedForm constant(double c) { return monomial(0, c); }

  double operator()(double x) const {
    switch (kind) {
      case Kind::Lambda1: return 1.0 / (1.0 + x);
      case Kind::Kappa: return p / (p * p - x * x);
      case Kind::F0: return x <= 1.0 ? 1.0 / (1.0 + x) : -1.0 / (x * (1.0 + x));
      case Kind::Indicator: return (x >= p && x <= q) ? 1.0 : 0.0;
      case Kind::Monomial: return p * std::pow(x, n);
    }
    return 0.0;
  }

  std::vector<double> jumps() const {
    if (kind == Kind::Indicator) return {p, q};
    if (kind == Kind::F0) return {1.0};
    return {};
  }

  std::string name() const {
    switch (kind) {
      case Kind::Lambda1: return "lambda1";
      case Kind::Kappa: return "kappa(" + std::to_string(p) + ")";
      case Kind::F0: return "f0";
      case Kind::Indicator: return "indicator[" + std::to_string(p) + "," + std::to_string(q) + "]";
      case Kind::Monomial: return std::to_string(p) + "*x^" + std::to_string(n);
    }
    return "";
  }
};

/// How operator series tails treat the input near 0: Smooth inputs admit the
/// Euler-Maclaurin integral, Sampled inputs are only trusted at genuine
/// branch points.
enum class TailRule { Smooth, Sampled };

using RealFn = std::function<double(double)>;

/// A real function on [a, b], zero outside, carried by node samples and
/// optionally by an exact callable.
class GridFunction {
 public:
  GridFunction() = default;

  static GridFunction from_closed_form(const GridSpec& spec, const ClosedForm& cf) {
    auto j = cf.jumps();
    GridFunction g = from_callable(spec, [cf](double x) { return cf(x); }, j);
    g.tag_ = cf;
    return g;
  }

  /// The callable stays attached and is used for pointwise evaluation.
  static GridFunction from_callable(const GridSpec& spec, RealFn fn, std::vector<double> jumps = {},
                                    TailRule rule = TailRule::Smooth) {
    GridFunction g;
    g.grid_ = std::make_shared<const Grid>(spec, jumps);
    g.jumps_ = g.grid_->breaks();
    g.values_.resize(g.grid_->size());
    for (std::size_t i = 0; i < g.values_.size(); ++i) g.values_[i] = fn(g.grid_->nodes()[i]);
    g.exact_ = std::move(fn);
    g.tail_ = rule;
    return g;
  }

  static GridFunction from_values(std::shared_ptr<const Grid> grid, std::vector<double> values) {
    if (values.size() != grid->size()) throw InvalidInput("GridFunction: value count mismatch");
    GridFunction g;
    g.grid_ = std::move(grid);
    g.jumps_ = g.grid_->breaks();
    g.values_ = std::move(values);
    return g;
  }

  /// Drops the exact callable; evaluation then interpolates node values.
  GridFunction sampled() const {
    GridFunction g = *this;
    g.exact_ = nullptr;
    g.tag_.reset();
    return g;
  }

  double operator()(double x) const {
    if (!(x >= grid_->a() && x <= grid_->b())) return 0.0;
    if (exact_) return exact_(x);
    return grid_->interpolate(values_, x);
  }

  const Grid& grid() const { return *grid_; }
  std::shared_ptr<const Grid> grid_ptr() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  const std::vector<double>& jumps() const { return jumps_; }
  const std::optional<ClosedForm>& closed_form() const { return tag_; }
  bool has_exact() const { return static_cast<bool>(exact_); }
  TailRule tail_rule() const { return tail_; }
  double a() const { return grid_->a(); }
  double b() const { return grid_->b(); }

  /// Grid quadrature of the node values.
  double integral() const {
    double s = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i) s += grid_->weights()[i] * values_[i];
    return s;
  }

  double sup_norm(std::optional<std::pair<double, double>> sub = std::nullopt) const {
    double m = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i) {
      const double x = grid_->nodes()[i];
      if (sub && (x < sub->first || x > sub->second)) continue;
      m = std::max(m, std::abs(values_[i]));
    }
    return m;
  }

 private:
  std::shared_ptr<const Grid> grid_;
  std::vector<double> values_;
  std::vector<double> jumps_;
  std::optional<ClosedForm> tag_;
  RealFn exact_;
  TailRule tail_ = TailRule::Smooth;
};

/// ∫_sub |f| by adaptive quadrature split at panel edges and jumps.
inline double l1_norm(const GridFunction& f, std::optional<std::pair<double, double>> sub = std::nullopt,
                      double tol = 1e-11) {
  double lo = f.a(), hi = f.b();
  if (sub) {
    lo = std::max(lo, sub->first);
    hi = std::min(hi, sub->second);
  }
  if (!(lo < hi)) return 0.0;
  std::vector<double> br = f.grid().edges();
  br.insert(br.end(), f.jumps().begin(), f.jumps().end());
  QuadOptions qo{.abs_tol = tol, .rel_tol = 1e-12, .max_intervals = 20000};
  auto r = integrate_abs_adaptive([&](double x) { return f(x); }, lo, hi, qo, br, 8);
  if (!r.converged && r.error > 1e3 * tol)
    throw NonConvergence("l1_norm: quadrature did not converge", r.value, r.error);
  return r.value;
}

}  // namespace hup
