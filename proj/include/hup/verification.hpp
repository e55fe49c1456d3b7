#pragma once

// Named verification campaigns, their reports and JSON serialization.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hup/errors.hpp"
#include "hup/hilbert.hpp"
#include "hup/kg_fourier.hpp"
#include "hup/transfer_ops.hpp"

namespace hup {

inline constexpr std::uint64_t kDefaultSeed = 20240611;

struct Check {
  std::string description;
  double measured = 0.0;
  double target = 0.0;
  std::string relation;  // "<=" or ">="
  double margin = 0.0;
  bool pass = false;
};

struct Report {
  std::string campaign_id;
  std::string anchor;
  std::uint64_t seed = kDefaultSeed;
  std::map<std::string, std::vector<double>> parameters;
  std::vector<Check> checks;
  bool pass = true;
  std::optional<double> wall_time_s;
};

using Overrides = std::map<std::string, std::vector<double>>;

// ---------------------------------------------------------------------------
// Randomized smooth test functions

namespace detail {

inline std::uint64_t fnv1a(std::string_view s, std::uint64_t h = 14695981039346656037ull) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// Portable uniform draw in [0, 1); std distributions differ across libraries.
inline double unit_draw(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }
inline double draw_in(std::mt19937_64& g, double lo, double hi) { return lo + (hi - lo) * unit_draw(g); }

}  // namespace detail

struct SmoothTerm {
  enum class Kind { Bump, Cosine };
  Kind kind = Kind::Bump;
  double amp = 1.0;
  double center = 0.0;  // bump
  double width = 1.0;   // bump half-width
  int freq = 1;         // cosine: cos(π·freq·x + phase)
  double phase = 0.0;
};

/// Sum of at most four scaled bumps exp(1 - 1/(1-u²)) and cosines,
/// optionally reduced to its even or odd part.
class SmoothFamily {
 public:
  std::vector<SmoothTerm> terms;
  int parity = 0;  // 0 none, +1 even part, -1 odd part

  static SmoothFamily draw(std::mt19937_64& g, double lo, double hi, bool bumps_only = false) {
    SmoothFamily f;
    const int n = 1 + static_cast<int>(detail::unit_draw(g) * 4.0);
    for (int k = 0; k < n; ++k) {
      SmoothTerm t;
      const bool bump = bumps_only || detail::unit_draw(g) < 0.5;
      t.kind = bump ? SmoothTerm::Kind::Bump : SmoothTerm::Kind::Cosine;
      t.amp = detail::draw_in(g, 0.5, 1.5) * (detail::unit_draw(g) < 0.5 ? -1.0 : 1.0);
      t.width = detail::draw_in(g, 0.1, 0.4) * (hi - lo);
      t.center = detail::draw_in(g, lo + t.width, hi - t.width);
      t.freq = 1 + static_cast<int>(detail::unit_draw(g) * 3.0);
      t.phase = detail::draw_in(g, 0.0, 2.0 * std::numbers::pi);
      f.terms.push_back(t);
    }
    return f;
  }

  double raw(double x) const {
    double s = 0.0;
    for (const SmoothTerm& t : terms) {
      if (t.kind == SmoothTerm::Kind::Cosine) {
        s += t.amp * std::cos(std::numbers::pi * t.freq * x + t.phase);
        continue;
      }
      const double u = (x - t.center) / t.width;
      if (std::abs(u) < 1.0) s += t.amp * std::exp(1.0 - 1.0 / (1.0 - u * u));
    }
    return s;
  }

  double operator()(double x) const {
    if (parity == 0) return raw(x);
    return 0.5 * (raw(x) + parity * raw(-x));
  }

  /// Closed hull of the bump supports; meaningful for bump-only families.
  std::pair<double, double> bump_hull() const {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const SmoothTerm& t : terms) {
      lo = std::min(lo, t.center - t.width);
      hi = std::max(hi, t.center + t.width);
    }
    if (parity != 0) {
      lo = std::min(lo, -hi);
      hi = -lo;
    }
    return {lo, hi};
  }

  std::string describe() const {
    std::ostringstream os;
    os.precision(6);
    if (parity) os << (parity > 0 ? "even part of " : "odd part of ");
    for (std::size_t i = 0; i < terms.size(); ++i) {
      const SmoothTerm& t = terms[i];
      if (i) os << " + ";
      if (t.kind == SmoothTerm::Kind::Bump) os << t.amp << "*bump(" << t.center << "," << t.width << ")";
      else os << t.amp << "*cos(" << t.freq << "pi x+" << t.phase << ")";
    }
    return os.str();
  }
};

// ---------------------------------------------------------------------------
// Campaign context

class CampaignContext {
 public:
  CampaignContext(Report& rep, const Overrides& ov, std::uint64_t seed, std::string_view id)
      : rep_(rep), ov_(ov), rng_(seed ^ detail::fnv1a(id)) {}

  std::vector<double> list(const std::string& key, std::vector<double> def) {
    auto it = ov_.find(key);
    std::vector<double> v = it == ov_.end() ? std::move(def) : it->second;
    rep_.parameters[key] = v;
    return v;
  }
  double value(const std::string& key, double def) { return list(key, {def}).front(); }
  int integer(const std::string& key, int def) { return static_cast<int>(std::lround(value(key, def))); }

  std::mt19937_64& rng() { return rng_; }

  void at_most(std::string desc, double measured, double bound) { add(std::move(desc), measured, bound, "<="); }
  void at_least(std::string desc, double measured, double bound) { add(std::move(desc), measured, bound, ">="); }

  /// Runs a check group; a library error becomes a failed check naming it.
  template <class F>
  void guard(const std::string& desc, F&& body) {
    try {
      body();
    } catch (const Error& e) {
      add(desc + " [error: " + e.what() + "]", std::numeric_limits<double>::quiet_NaN(), 0.0, "<=");
    }
  }

 private:
  void add(std::string desc, double measured, double bound, const char* rel) {
    Check c{std::move(desc), measured, bound, rel};
    c.margin = (c.relation == "<=") ? bound - measured : measured - bound;
    c.pass = std::isfinite(c.margin) && c.margin >= 0.0;
    rep_.pass = rep_.pass && c.pass;
    rep_.checks.push_back(std::move(c));
  }

  Report& rep_;
  const Overrides& ov_;
  std::mt19937_64 rng_;
};

struct Campaign {
  std::string id;
  std::string anchor;
  std::vector<std::string> parameters;  // overridable keys
  std::function<void(CampaignContext&)> body;
};

// ---------------------------------------------------------------------------
// Helpers shared by campaigns

namespace campaigns {

inline std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

inline GridFunction grid_fn(const GridSpec& spec, std::function<double(double)> fn, std::vector<double> jumps = {}) {
  return GridFunction::from_callable(spec, std::move(fn), std::move(jumps));
}

inline double bump_unit(double u) { return std::abs(u) < 1.0 ? std::exp(-1.0 / (1.0 - u * u)) : 0.0; }

/// Smooth bump supported on (a, b).
inline std::function<double(double)> bump_on(double a, double b) {
  return [a, b](double x) { return (x > a && x < b) ? std::exp(-1.0 / ((x - a) * (b - x))) : 0.0; };
}

inline LineFunction random_line_bumps(std::mt19937_64& g, double lo, double hi) {
  SmoothFamily s = SmoothFamily::draw(g, lo, hi, true);
  auto [a, b] = s.bump_hull();
  return LineFunction::compact([s](double t) { return s(t); }, a, b);
}

/// Max over nodes with |x| ≤ eta of |g(x) - ref(x)|.
template <class Ref>
double max_node_gap(const GridFunction& g, Ref&& ref, double eta) {
  double m = 0.0;
  for (std::size_t i = 0; i < g.values().size(); ++i) {
    const double x = g.grid().nodes()[i];
    if (std::abs(x) <= eta) m = std::max(m, std::abs(g.values()[i] - ref(x)));
  }
  return m;
}

// Lebesgue measure of {x ∈ [lo, hi] : |h(x)| > lambda} from n midpoints.
template <class H>
double level_set_measure(H&& h, double lambda, double lo, double hi, int n) {
  const double dx = (hi - lo) / n;
  long count = 0;
  for (int i = 0; i < n; ++i)
    if (std::abs(h(lo + (i + 0.5) * dx)) > lambda) ++count;
  return count * dx;
}

// --- transfer operators ----------------------------------------------------

inline void contraction(CampaignContext& c) {
  for (double beta : c.list("beta", {0.5, 1.0})) {
    c.guard("T_beta contraction, beta=" + fmt(beta), [&] {
      SmoothFamily s = SmoothFamily::draw(c.rng(), -1.0, 1.0);
      auto f = grid_fn(GridSpec{}, [s](double x) { return s(x); });
      const double r = image_l1_norm(OperatorKind::sub_t(beta), f) - l1_norm(f, std::nullopt, 1e-12);
      c.at_most("||T f||_1 - ||f||_1, beta=" + fmt(beta) + ", f=" + s.describe(), r, 1e-10);
    });
  }
  for (double gamma : c.list("gamma", {0.5, 1.0})) {
    c.guard("S_gamma contraction, gamma=" + fmt(gamma), [&] {
      SmoothFamily s = SmoothFamily::draw(c.rng(), 0.0, 1.0);
      auto f = grid_fn(GridSpec::unit_positive(), [s](double x) { return s(x); });
      const double r = image_l1_norm(OperatorKind::sub_s(gamma), f) - l1_norm(f, std::nullopt, 1e-12);
      c.at_most("||S f||_1 - ||f||_1, gamma=" + fmt(gamma) + ", f=" + s.describe(), r, 1e-10);
    });
  }
  c.guard("isometry on positive functions", [&] {
    auto f = grid_fn(GridSpec{}, [](double x) { return 1.0 + 0.5 * x * x + 0.25 * x; });
    c.at_most("| ||T_1 f||_1 - ||f||_1 |, f = 1 + x/4 + x^2/2",
              std::abs(image_l1_norm(OperatorKind::sub_t(1.0), f) - l1_norm(f)), 1e-6);
    auto h = grid_fn(GridSpec::unit_positive(), [](double x) { return std::exp(x); });
    c.at_most("| ||S_1 h||_1 - ||h||_1 |, h = exp",
              std::abs(image_l1_norm(OperatorKind::sub_s(1.0), h) - l1_norm(h)), 1e-6);
  });
}

inline void duality(CampaignContext& c) {
  for (double beta : c.list("beta", {0.4, 1.0})) {
    c.guard("tau duality, beta=" + fmt(beta), [&] {
      SmoothFamily s = SmoothFamily::draw(c.rng(), -1.0, 1.0), t = SmoothFamily::draw(c.rng(), -1.0, 1.0);
      auto f = grid_fn(GridSpec{}, [s](double x) { return s(x); });
      const double gap = duality_gap(MapParams::tau(beta), f, [t](double x) { return t(x); });
      c.at_most("|<T f, g> - <f, L g>|, beta=" + fmt(beta) + ", f=" + s.describe() + ", g=" + t.describe(), gap, 1e-8);
    });
  }
  for (double gamma : c.list("gamma", {0.4, 1.0})) {
    c.guard("sigma duality, gamma=" + fmt(gamma), [&] {
      SmoothFamily s = SmoothFamily::draw(c.rng(), 0.0, 1.0), t = SmoothFamily::draw(c.rng(), 0.0, 1.0);
      auto f = grid_fn(GridSpec::unit_positive(), [s](double x) { return s(x); });
      const double gap = duality_gap(MapParams::sigma(gamma), f, [t](double x) { return t(x); });
      c.at_most("|<S f, g> - <f, G g>|, gamma=" + fmt(gamma) + ", f=" + s.describe() + ", g=" + t.describe(), gap,
                1e-8);
    });
  }
}

inline void kappa_invariance(CampaignContext& c) {
  const double eta = c.value("eta", 0.9);
  auto k1 = [](double x) { return 1.0 / (1.0 - x * x); };
  for (double beta : c.list("beta", {0.3, 0.7, 1.0})) {
    c.guard("kappa, beta=" + fmt(beta), [&] {
      auto kb = GridFunction::from_closed_form(GridSpec{}, ClosedForm::kappa(beta));
      auto t = apply(OperatorKind::sub_t(beta), kb);
      c.at_most("max_{|x|<=" + fmt(eta) + "} |T kappa_beta - kappa_1|, beta=" + fmt(beta), max_node_gap(t, k1, eta),
                1e-8);
      auto kk = GridFunction::from_closed_form(GridSpec{}, ClosedForm::kappa(1.0));
      auto tk = apply(OperatorKind::sub_t(beta), kk);
      double excess = -std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < tk.values().size(); ++i) {
        const double x = tk.grid().nodes()[i];
        if (std::abs(x) <= eta) excess = std::max(excess, (tk.values()[i] - beta * k1(x)) / k1(x));
      }
      c.at_most("max (T kappa_1 - beta kappa_1)/kappa_1, beta=" + fmt(beta), excess, 1e-8);
    });
  }
  c.guard("lambda_1", [&] {
    auto l = GridFunction::from_closed_form(GridSpec::unit_positive(), ClosedForm::lambda1());
    auto s = apply(OperatorKind::sub_s(1.0), l);
    c.at_most("max |S_1 lambda_1 - lambda_1|", max_node_gap(s, [](double x) { return 1.0 / (1.0 + x); }, 1.0), 1e-8);
  });
  c.guard("T_1 iterates of kappa_1", [&] {
    auto kk = GridFunction::from_closed_form(GridSpec{}, ClosedForm::kappa(1.0));
    const double ref = l1_norm(kk, std::make_pair(-eta, eta));
    auto g = iterate(OperatorKind::sub_t(1.0), 5, kk);
    c.at_most("| ||T_1^5 kappa_1||_{L1(I_eta)} - ||kappa_1||_{L1(I_eta)} |",
              std::abs(l1_norm(g, std::make_pair(-eta, eta)) - ref), 1e-6);
  });
}

inline void lambda_iterates(CampaignContext& c) {
  const int n_max = c.integer("n_max", 6);
  for (double gamma : c.list("gamma", {0.3, 0.5, 0.9})) {
    c.guard("S iterates, gamma=" + fmt(gamma), [&] {
      const OperatorKind op = OperatorKind::sub_s(gamma);
      GridFunction g = GridFunction::from_closed_form(GridSpec::unit_positive(), ClosedForm::lambda1());
      const double q = 2.0 * gamma / (1.0 + gamma);
      for (int n = 1; n <= n_max; ++n) {
        g = apply(op, g);
        double excess = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < g.values().size(); ++i) {
          const double x = g.grid().nodes()[i];
          excess = std::max(excess, g.values()[i] - std::pow(q, n) / (1.0 + x));
        }
        c.at_most("max (S^n lambda_1 - (2g/(1+g))^n lambda_1), gamma=" + fmt(gamma) + ", n=" + std::to_string(n),
                  excess, 1e-6);
      }
    });
  }
}

inline void kappa_iterates(CampaignContext& c) {
  const int n_max = c.integer("n_max", 6);
  for (double beta : c.list("beta", {0.3, 0.5, 0.9})) {
    c.guard("T iterates, beta=" + fmt(beta), [&] {
      const OperatorKind op = OperatorKind::sub_t(beta);
      GridFunction g = GridFunction::from_closed_form(GridSpec{}, ClosedForm::kappa(1.0));
      for (int n = 1; n <= n_max; ++n) {
        g = apply(op, g);
        c.at_most("sup T^n kappa_1, beta=" + fmt(beta) + ", n=" + std::to_string(n), g.sup_norm(),
                  2.0 * std::pow(beta, n) / (1.0 - beta) + 1e-6);
      }
    });
  }
}

inline void reflection(CampaignContext& c) {
  for (double beta : c.list("beta", {0.5, 1.0})) {
    c.guard("reflection, beta=" + fmt(beta), [&] {
      SmoothFamily s = SmoothFamily::draw(c.rng(), -1.0, 1.0);
      auto f = grid_fn(GridSpec{}, [s](double x) { return s(x); });
      auto r = shape_checks(beta, f, ShapeClass::OddIncreasing);
      c.at_most("relative |T f(x) - (flip T flip f)(x)|, beta=" + fmt(beta) + ", f=" + s.describe(), r.reflection_gap,
                1e-10);
    });
  }
}

inline void odd_increasing(CampaignContext& c) {
  const std::vector<std::pair<std::string, std::function<double(double)>>> fs{
      {"x", [](double x) { return x; }},
      {"x^3", [](double x) { return x * x * x; }},
      {"tanh(2x)", [](double x) { return std::tanh(2.0 * x); }}};
  for (double beta : c.list("beta", {0.5, 1.0}))
    for (const auto& [name, fn] : fs)
      c.guard("odd increasing " + name, [&] {
        auto r = shape_checks(beta, grid_fn(GridSpec{}, fn), ShapeClass::OddIncreasing);
        c.at_most("relative parity gap of T f, f=" + name + ", beta=" + fmt(beta), r.symmetry_gap, 1e-10);
        c.at_least("min first difference of T f, f=" + name + ", beta=" + fmt(beta), r.min_first_difference, -1e-10);
      });
}

inline void even_convex(CampaignContext& c) {
  const std::vector<std::pair<std::string, std::function<double(double)>>> fs{
      {"x^2", [](double x) { return x * x; }},
      {"1+x^4", [](double x) { return 1.0 + x * x * x * x; }},
      {"cosh(3x)", [](double x) { return std::cosh(3.0 * x); }}};
  for (double beta : c.list("beta", {0.5, 1.0}))
    for (const auto& [name, fn] : fs)
      c.guard("even convex " + name, [&] {
        auto r = shape_checks(beta, grid_fn(GridSpec{}, fn), ShapeClass::EvenConvexPositive);
        c.at_most("relative parity gap of T f, f=" + name + ", beta=" + fmt(beta), r.symmetry_gap, 1e-10);
        c.at_least("min second divided difference of T f, f=" + name + ", beta=" + fmt(beta),
                   r.min_second_difference, -1e-8);
        c.at_least("min of T f, f=" + name + ", beta=" + fmt(beta), r.min_value, -1e-12);
      });
}

inline void sandwich(CampaignContext& c) {
  const std::vector<std::pair<std::string, GridFunction>> fs{
      {"kappa_1", GridFunction::from_closed_form(GridSpec{}, ClosedForm::kappa(1.0))},
      {"x^2", GridFunction::from_closed_form(GridSpec{}, ClosedForm::monomial(2))},
      {"cosh(3x)", grid_fn(GridSpec{}, [](double x) { return std::cosh(3.0 * x); })}};
  const int samples = c.integer("samples", 200);
  for (double beta : c.list("beta", {0.3, 0.6, 1.0}))
    for (const auto& [name, f] : fs)
      c.guard("sandwich " + name, [&] {
        auto r = shape_checks(beta, f, ShapeClass::EvenIncreasingPositive, {}, samples);
        c.at_least("sandwich margin at " + std::to_string(samples) + " points, f=" + name + ", beta=" + fmt(beta),
                   r.sandwich_margin, -1e-6);
      });
}

inline void endpoint(CampaignContext& c) {
  std::vector<std::pair<std::string, std::function<double(double)>>> fs{
      {"x", [](double x) { return x; }},
      {"x^3 - x/2", [](double x) { return x * x * x - 0.5 * x; }},
      {"sin(2x)", [](double x) { return std::sin(2.0 * x); }}};
  for (int k = 0; k < 2; ++k) {
    SmoothFamily s = SmoothFamily::draw(c.rng(), -1.0, 1.0);
    s.parity = -1;
    fs.emplace_back(s.describe(), [s](double x) { return s(x); });
  }
  for (double beta : c.list("beta", {0.25, 0.5, 1.0}))
    for (const auto& [name, fn] : fs)
      c.guard("endpoint " + name, [&] {
        const OperatorKind op = OperatorKind::sub_t(beta);
        auto f = grid_fn(GridSpec{}, fn);
        const double v = series_at(op, f, 1.0, TailRule::Smooth, std::nullopt, 256);
        c.at_most("|T f(1) - beta f(beta)|, beta=" + fmt(beta) + ", f=" + name, std::abs(v - beta * fn(beta)), 1e-8);
      });
}

inline void transfer_contraction(CampaignContext& c) {
  for (double beta : c.list("beta", {0.5, 1.0})) {
    c.guard("T' contraction, beta=" + fmt(beta), [&] {
      const OperatorKind tp = OperatorKind::transfer_t(beta);
      SmoothFamily s = SmoothFamily::draw(c.rng(), -1.0, 1.0);
      auto f = grid_fn(GridSpec{}, [s](double x) { return s(x); });
      c.at_most("||T' f||_1 - ||f||_1, beta=" + fmt(beta) + ", f=" + s.describe(),
                image_l1_norm(tp, f) - l1_norm(f, std::nullopt, 1e-12), 1e-10);
      auto p = grid_fn(GridSpec{}, [](double x) { return 2.0 + std::sin(3.0 * x); });
      c.at_most("| ||T' p||_1 - ||p||_1 |, p = 2 + sin(3x), beta=" + fmt(beta),
                std::abs(image_l1_norm(tp, p) - l1_norm(p)), 1e-6);
    });
  }
}

inline void wandering(CampaignContext& c) {
  const int n_max = c.integer("n_max", 8);
  for (double p : c.list("param", {0.5, 0.9}))
    for (Family fam : {Family::SigmaGauss, Family::TauGauss})
      for (int N = 1; N <= n_max; ++N) {
        const std::string tag = std::string(fam == Family::SigmaGauss ? "F, gamma=" : "E, beta=") + fmt(p) +
                                ", N=" + std::to_string(N);
        c.guard("wandering " + tag, [&] {
          WanderingQuery q{MapParams{fam, p}, N};
          const double m = wandering_measure_orbits(q).value;
          const double d = wandering_measure_duality(q);
          c.at_most("orbit measure - bound, " + tag, m - wandering_bound(q), 1e-4);
          c.at_most("|orbit measure - duality measure|, " + tag, std::abs(m - d), 1e-4);
        });
      }
}

inline void exactness(CampaignContext& c) {
  const int n = c.integer("n", 40);
  for (double p : c.list("param", {0.4, 0.8})) {
    c.guard("decay T, beta=" + fmt(p), [&] {
      auto one = GridFunction::from_closed_form(GridSpec{}, ClosedForm::constant(1.0));
      c.at_most("||T^" + std::to_string(n) + " 1||_1 / ||1||_1, beta=" + fmt(p),
                l1_norm(iterate(OperatorKind::sub_t(p), n, one)) / l1_norm(one), 0.05);
    });
    c.guard("decay S, gamma=" + fmt(p), [&] {
      auto one = GridFunction::from_closed_form(GridSpec::unit_positive(), ClosedForm::constant(1.0));
      c.at_most("||S^" + std::to_string(n) + " 1||_1 / ||1||_1, gamma=" + fmt(p),
                l1_norm(iterate(OperatorKind::sub_s(p), n, one)) / l1_norm(one), 0.05);
    });
  }
}

inline void exactness_critical(CampaignContext& c) {
  const int n = c.integer("n", 60);
  c.guard("zero-mean decay", [&] {
    auto zm = grid_fn(GridSpec{}, [](double x) { return (x >= 0 && x <= 0.5) ? 1.0 : ((x >= -0.5 && x < 0) ? -1.0 : 0.0); },
                      {-0.5, 0.0, 0.5});
    c.at_most("||T_1^" + std::to_string(n) + " f||_1 / ||f||_1, f = 1_[0,1/2] - 1_[-1/2,0)",
              l1_norm(iterate(OperatorKind::sub_t(1.0), n, zm)) / l1_norm(zm), 0.2);
  });
}

inline void weak_convergence(CampaignContext& c) {
  const double eta = c.value("eta", 0.5);
  const int n_max = c.integer("n_max", 60);
  c.guard("local decay", [&] {
    auto ind = GridFunction::from_closed_form(GridSpec{}, ClosedForm::indicator(-eta, eta));
    auto p = decay_profile(OperatorKind::sub_t(1.0), ind, n_max, std::make_pair(-eta, eta));
    double rise = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k < p.size(); ++k) rise = std::max(rise, p[k].l1 - p[k - 1].l1);
    c.at_most("max_n (||T_1^n f||_{L1(I_eta)} - ||T_1^(n-1) f||_{L1(I_eta)}), f = 1_{I_eta}", rise, 1e-3);
    c.at_most("||T_1^n f||_{L1(I_eta)} / ||f||_{L1(I_eta)} at n=" + std::to_string(n_max), p.back().l1 / p.front().l1,
              1.0);
  });
}

inline void interlacing(CampaignContext& c) {
  const std::vector<std::pair<std::string, GridFunction>> fs{
      {"1", GridFunction::from_closed_form(GridSpec{}, ClosedForm::constant(1.0))},
      {"bump", grid_fn(GridSpec{}, [](double x) { return bump_unit(x / 0.7); }, {-0.7, 0.7})}};
  const int n_max = c.integer("n_max", 3);
  for (double beta : c.list("beta", {0.4, 0.8}))
    for (int N = 1; N <= n_max; ++N)
      for (const auto& [name, f] : fs)
        c.guard("interlace", [&] {
          auto r = interlace_residual(beta, f, N);
          const std::string tag = "beta=" + fmt(beta) + ", N=" + std::to_string(N) + ", f=" + name;
          c.at_most("||1_{I_beta} T'^(N-1) f - T'^(N-1)(1_E f)||_1, " + tag, r.r1, 1e-4);
          c.at_most("||T'^N(1_E f) - T^N f||_1, " + tag, r.r2, 1e-4);
        });
}

inline void transfer_square(CampaignContext& c) {
  for (double beta : c.list("beta", {0.3, 0.5})) {
    c.guard("T'^2", [&] {
      const double a = beta + 0.05, b = 0.95;
      auto f = grid_fn(
          GridSpec{}, [a, b](double x) { return bump_on(a, b)(x) + 0.5 * bump_on(-b, -a)(x); }, {-b, -a, a, b});
      c.at_most("||T'^2 f - f||_1, f supported off I_beta, beta=" + fmt(beta), transfer_square_residual(beta, f), 1e-6);
    });
  }
}

// --- Hilbert transforms ----------------------------------------------------

inline void hilbert_basic(CampaignContext& c) {
  const double pi = std::numbers::pi;
  const double eps = c.value("eps", 0.5);
  c.guard("Poisson kernel", [&] {
    auto P = LineFunction::decaying([=](double t) { return eps / (pi * (eps * eps + t * t)); }, Decay::InverseSquare);
    double m = 0.0;
    for (int k = 0; k < 10; ++k) {
      const double x = -4.5 + k;
      m = std::max(m, std::abs(hilbert(P, x) - x / (pi * (eps * eps + x * x))));
    }
    c.at_most("max over 10 points |H P_eps - x/(pi(eps^2+x^2))|, eps=" + fmt(eps), m, 1e-6);
  });
  c.guard("indicator", [&] {
    auto ind = LineFunction::decaying([](double t) { return std::abs(t) <= 1 ? 1.0 : 0.0; }, Decay::InverseSquare,
                                      {-1, 1}, true);
    auto indc = LineFunction::compact([](double) { return 1.0; }, -1, 1, {-1, 1});
    c.at_most("|H 1_[-1,1](2) - log(3)/pi|", std::abs(hilbert(indc, 2.0) - std::log(3.0) / pi), 1e-10);
    c.at_most("|H 1_[-1,1](0.5) - log(3)/pi|", std::abs(hilbert(ind, 0.5) - std::log(3.0) / pi), 1e-8);
  });
  c.guard("anti-involution", [&] {
    auto f = random_line_bumps(c.rng(), -1.0, 1.0);
    c.at_most("max |H H f + f| at 5 points, random bumps", anti_involution_residual(f, {-1.5, -0.3, 0.2, 0.8, 2.0}),
              1e-4);
  });
}

inline void weak_type(CampaignContext& c) {
  const double pi = std::numbers::pi;
  // Sharp weak (1,1) constant of H: (1 + 3^-2 + 5^-2 + ...)/(1 - 3^-2 + 5^-2 - ...).
  const double C = (pi * pi / 8.0) / 0.915965594177219015;
  const int n = c.integer("samples", 4000);
  for (double lambda : c.list("lambda", {0.25, 0.5, 1.0}))
    c.guard("weak type", [&] {
      auto ind = LineFunction::compact([](double) { return 1.0; }, -1, 1, {-1, 1});
      const double m = level_set_measure([&](double x) { return hilbert(ind, x); }, lambda, -5.0, 5.0, n);
      c.at_most("lambda |{|H f| > lambda}| / (C ||f||_1), f = 1_[-1,1], lambda=" + fmt(lambda), lambda * m / (2 * C), 1.0);
      c.at_most("| |{|H f| > lambda}| - 4/sinh(pi lambda) |, f = 1_[-1,1], lambda=" + fmt(lambda),
                std::abs(m - 4.0 / std::sinh(pi * lambda)), 8.0 * 10.0 / n);
    });
  // f_k = 1_[-1,1+l] -> f in L1 forces H f_k -> H f in weak L1.
  const double lambda = 0.5;
  double prev = std::numeric_limits<double>::infinity();
  for (double l : c.list("lengths", {1.0, 0.25, 0.0625}))
    c.guard("continuity", [&] {
      auto d = LineFunction::compact([](double) { return 1.0; }, 1.0, 1.0 + l, {1.0, 1.0 + l});
      const double m = level_set_measure([&](double x) { return hilbert(d, x); }, lambda, 1.0 - 2 * l, 1.0 + 3 * l, n);
      const double w = lambda * m;
      c.at_most("lambda |{|H(f_k - f)| > lambda}| / (C ||f_k - f||_1), l=" + fmt(l), w / (C * l), 1.0);
      c.at_most("weak quasi-norm of H(f_k - f) relative to previous, l=" + fmt(l), w / prev, 1.0);
      prev = w;
    });
}

inline void modified_hilbert(CampaignContext& c) {
  const double pi = std::numbers::pi;
  c.guard("constant", [&] {
    auto one = LineFunction::decaying([](double) { return 1.0; }, Decay::Bounded);
    c.at_most("|H~ 1 (0.3)|", std::abs(hilbert_modified(one, 0.3)), 1e-10);
  });
  c.guard("difference is constant", [&] {
    auto P = LineFunction::decaying([=](double t) { return 1 / (pi * (1 + t * t)); }, Decay::InverseSquare);
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (double x : {-3.0, 0.0, 5.0}) {
      const double d = hilbert_modified(P, x) - hilbert(P, x);
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
    c.at_most("spread of H~ P - H P over 3 points", hi - lo, 1e-10);
  });
}

inline void modified_square(CampaignContext& c) {
  c.guard("H~^2", [&] {
    auto f = LineFunction::decaying([](double t) { return (1 - t * t) / ((1 + t * t) * (1 + t * t)); },
                                    Decay::InverseSquare);
    c.at_most("|c(f) - 1/4|, f = (1-t^2)/(1+t^2)^2", std::abs(c_of(f) - 0.25), 1e-10);
    c.at_most("max |H~ H~ f + f - c(f)| at 5 points", double_modified_residual(f, {-2, -0.5, 0.3, 1, 3}), 1e-4);
  });
}

inline void jbeta_constant(CampaignContext& c) {
  auto tf = LineFunction::decaying([](double t) { return t / (1 + t * t); }, Decay::Inverse);
  for (double beta : c.list("beta", {0.5, 1.0}))
    c.guard("c_beta", [&] {
      c.at_most("max |J* H~ f - H~ J* f - c_beta(f)|, f = t/(1+t^2), beta=" + fmt(beta),
                modified_commutator_residual(beta, tf, {0.5, -1.0, 2.5}), 1e-4);
      const double expect = beta == 1.0 ? 0.0 : (beta - 1.0) / (2.0 * (1.0 + beta));
      c.at_most("|c_beta(f) - (beta-1)/(2(1+beta))|, beta=" + fmt(beta), std::abs(c_beta(beta, tf) - expect), 1e-10);
    });
}

inline void jstar_commutator(CampaignContext& c) {
  auto phi = LineFunction::compact(bump_on(1.0, 2.0), 1.0, 2.0);
  for (double beta : c.list("beta", {0.5, 1.0}))
    c.guard("commutator", [&] {
      auto r = commutator_Jstar_hilbert(beta, phi, {0.5, -0.7, 3.0});
      c.at_most("max |H J* phi - J* H phi - <phi, 1/(pi t)>|, beta=" + fmt(beta), r.max_residual, 1e-4);
    });
}

inline void involution_isometry(CampaignContext& c) {
  for (double beta : c.list("beta", {0.5, 2.0}))
    c.guard("isometry", [&] {
      auto ij = LineFunction::compact([](double) { return 1.0; }, 1, 2, {1, 2});
      c.at_most("| ||J 1_[1,2]||_1 - 1 |, beta=" + fmt(beta), std::abs(line_l1_norm(apply_J(beta, ij)) - 1.0), 1e-10);
      auto f = random_line_bumps(c.rng(), 0.5, 3.0);
      c.at_most("| ||J f||_1 - ||f||_1 |, random bumps, beta=" + fmt(beta),
                std::abs(line_l1_norm(apply_J(beta, f)) - line_l1_norm(f)), 1e-9);
    });
}

inline void involution_square(CampaignContext& c) {
  auto f = LineFunction::decaying([](double t) { return std::exp(-t * t) * (1 + t); }, Decay::InverseSquare);
  for (double beta : c.list("beta", {0.5, 2.0}))
    c.guard("involution", [&] {
      const LineFunction jf = apply_J(beta, f), jsf = apply_Jstar(beta, f);
      double m1 = 0.0, m2 = 0.0;
      for (double x : {-2.0, -0.4, 0.3, 1.1, 4.0}) {
        m1 = std::max(m1, std::abs(involution_J(beta, jf, x) - f(x)));
        m2 = std::max(m2, std::abs(involution_Jstar(beta, jsf, x) - f(x)));
      }
      c.at_most("max |J J f - f|, beta=" + fmt(beta), m1, 1e-12);
      c.at_most("max |J* J* f - f|, beta=" + fmt(beta), m2, 1e-12);
    });
}

inline void periodization_contraction(CampaignContext& c) {
  c.guard("positive", [&] {
    auto g = LineFunction::decaying([](double t) { return std::exp(-t * t); }, Decay::InverseSquare);
    auto [p, l] = periodization_norms(g);
    c.at_most("| ||P2 g|| - ||g||_1 |, g = exp(-t^2)", std::abs(p - l), 1e-9);
  });
  c.guard("signed", [&] {
    auto f = random_line_bumps(c.rng(), -3.0, 3.0);
    auto [p, l] = periodization_norms(f);
    c.at_most("||P2 f|| - ||f||_1, random bumps", p - l, 1e-10);
  });
}

inline void periodization_fourier(CampaignContext& c) {
  std::vector<int> ns;
  for (double v : c.list("n", {0, 1, 3})) ns.push_back(static_cast<int>(std::lround(v)));
  auto run = [&](const std::string& name, const LineFunction& f) {
    c.guard("fourier " + name, [&] {
      for (const FourierGap& g : periodization_fourier_check(f, ns))
        c.at_most("|P2 f^(n) - f^(pi n)|, f=" + name + ", n=" + std::to_string(g.n), g.gap, 1e-6);
    });
  };
  run("1_[0.3,2.7]", LineFunction::compact([](double) { return 1.0; }, 0.3, 2.7, {0.3, 2.7}));
  run("random bumps", random_line_bumps(c.rng(), -4.0, 4.0));
}

inline void periodization_intertwining(CampaignContext& c) {
  const double pi = std::numbers::pi;
  c.guard("intertwining", [&] {
    auto bb = LineFunction::compact([](double t) { return bump_unit(t); }, -1, 1);
    auto bt = LineFunction::compact([](double t) { return t * t * bump_unit(t); }, -1, 1);
    const double A = line_integral(bb) / line_integral(bt);
    auto g0 = LineFunction::compact([A](double t) { return (1 - A * t * t) * bump_unit(t); }, -1, 1);
    PeriodicFunction phi([=](double t) { return std::sin(pi * t) + 0.5 * std::cos(2 * pi * t) + 0.25 * std::sin(3 * pi * t); });
    auto r = periodization_hilbert_check(phi, g0);
    c.at_most("|<phi, P2 H g> - <phi, H2 P2 g>|", r.gap, 1e-6);
  });
}

inline void periodic_hilbert(CampaignContext& c) {
  const double pi = std::numbers::pi;
  PeriodicFunction cs([=](double t) { return std::cos(pi * t); });
  c.guard("H2 cos", [&] {
    double m = 0.0;
    for (double x : {-0.7, 0.3, 0.9}) m = std::max(m, std::abs(hilbert_periodic(cs, x) - std::sin(pi * x)));
    c.at_most("max |H2 cos(pi t) - sin(pi x)| at 3 points", m, 1e-8);
  });
  c.guard("window limit", [&] {
    auto w = periodic_window_check(cs, 0.3);
    c.at_most("|extrapolated window transform - H2 f|, f = cos(pi t), x = 0.3", w.gap, 1e-4);
  });
}

inline void szego(CampaignContext& c) {
  const double pi = std::numbers::pi;
  auto P = LineFunction::decaying([=](double t) { return 1 / (pi * (1 + t * t)); }, Decay::InverseSquare);
  const double y = c.value("y", 2.0);
  c.guard("projections", [&] {
    const double e = std::exp(-std::abs(y));
    c.at_most("|FT of P- P at y - e^{-|y|}|", std::abs(szego_fourier(P, -1, y) - e), 1e-6);
    c.at_most("|FT of P- P at -y|", std::abs(szego_fourier(P, -1, -y)), 1e-6);
    c.at_most("|FT of P+ P at y|", std::abs(szego_fourier(P, +1, y)), 1e-6);
    c.at_most("|FT of P+ P at -y - e^{-|y|}|", std::abs(szego_fourier(P, +1, -y) - e), 1e-6);
  });
}

inline void valeur(CampaignContext& c) {
  const double x = c.value("x", 2.0);
  c.guard("pev", [&] {
    auto sg = LineFunction::compact([](double t) { return t >= 0 ? 1.0 : -1.0; }, -1, 1, {-1, 0, 1});
    auto r = valeur_au_point(LineFunction::zero(), sg, x);
    c.at_most("|pev limit route - (f + Hg)(x)|, g = sgn 1_[-1,1], x=" + fmt(x), r.route_gap, 1e-4);
    c.at_most("|pev(chi_1) - pev(chi_2)|, x=" + fmt(x), r.cutoff_gap, 1e-4);
  });
}

inline void valeur_pointwise(CampaignContext& c) {
  c.guard("pev of f + Hg", [&] {
    auto f = LineFunction::compact([](double t) { return bump_unit(t - 1.5); }, 0.5, 2.5);
    auto bb = LineFunction::compact([](double t) { return bump_unit(t); }, -1, 1);
    auto bt = LineFunction::compact([](double t) { return t * t * bump_unit(t); }, -1, 1);
    const double A = line_integral(bb) / line_integral(bt);
    auto g = LineFunction::compact([A](double t) { return (1 - A * t * t) * bump_unit(t); }, -1, 1);
    auto r = valeur_au_point(f, g, 1.7);
    c.at_most("|pev[f + Hg](1.7) - f(1.7) - Hg(1.7)|", r.route_gap, 1e-4);
    c.at_most("cutoff dependence of pev[f + Hg](1.7)", r.cutoff_gap, 1e-4);
  });
}

// --- Klein-Gordon measures -------------------------------------------------

inline void f0_suite(CampaignContext& c) {
  c.guard("vanishing sums", [&] {
    auto r = periodized_vanishing_residual(f0_line_function(), 1.0, {0.1, 0.3, 0.5, 0.7, 0.9});
    c.at_most("max |sum_j f0(t+j)|", r.r1, 1e-5);
    c.at_most("max |sum_j (t+j)^-2 f0(1/(t+j))|", r.r2, 1e-5);
  });
  c.guard("lattice", [&] {
    LatticeCross lc;
    lc.m_max = c.integer("m_max", 8);
    lc.n_max = c.integer("n_max", 8);
    auto s = lattice_residual_scan(f0_measure(), lc);
    c.at_most("max lattice residual of the f0 measure, |m|,|n| <= " + std::to_string(lc.m_max), s.max_residual, 1e-4);
    c.at_most("lattice points with failed quadrature", s.failures, 0);
  });
  c.guard("critical normalization", [&] {
    c.at_most("|4 critical_f0(1/2, 2) - f0(1/2)|", std::abs(4 * critical_f0(0.5, 2.0) - f0_normalized(0.5)), 1e-15);
    c.at_most("|hat mu(0,0)|", std::abs(hyperbola_ft(f0_measure(), 0.0, 0.0)), 1e-8);
  });
}

inline void lattice_witness(CampaignContext& c) {
  const double pi = std::numbers::pi;
  c.guard("poisson density", [&] {
    auto P = LineFunction::decaying([=](double t) { return t > 0 ? 1 / (pi * (1 + t * t)) : 0.0; },
                                    Decay::InverseSquare, {0.0});
    auto s = lattice_residual_scan(HyperbolaMeasure{P}, LatticeCross{});
    c.at_least("max lattice residual of a Poisson density", s.max_residual, 1e-2);
  });
  c.guard("scaling", [&] {
    HyperbolaMeasure m3{f0_line_function(), c.value("mass", 3.0)};
    c.at_most("scaling covariance gap at (1.3, 0.7)", scaling_covariance_gap(m3, 1.3, 0.7), 1e-10);
  });
}

inline void fixed_point(CampaignContext& c) {
  c.guard("S_1^2 fixed point", [&] {
    auto l = GridFunction::from_closed_form(GridSpec::unit_positive(), ClosedForm::lambda1());
    c.at_most("||f0 - S_1^2 f0||_{L1(0,1)}", fixed_point_residual_S2(1.0, l), 1e-6);
  });
}

inline void extension(CampaignContext& c) {
  const double X = c.value("x_max", 10.0);
  c.guard("extension", [&] {
    auto l = GridFunction::from_closed_form(GridSpec::unit_positive(), ClosedForm::lambda1());
    auto e = extend_from_unit_interval(1.0, l, X);
    double m = 0.0;
    for (int k = 0; k <= 200; ++k) {
      const double t = 1.0 + (X - 1.0) * k / 200.0;
      if (t == 1.0) continue;
      m = std::max(m, std::abs(e(t) + 1.0 / (t * (1.0 + t))));
    }
    c.at_most("max_{1 < t <= " + fmt(X) + "} |ext lambda_1 (t) + 1/(t(1+t))|", m, 1e-6);
  });
}

inline void one_branch(CampaignContext& c) {
  const int samples = c.integer("samples", 20);
  c.guard("two routes", [&] {
    auto mu = f0_measure();
    double worst = 0.0;
    int used = 0;
    for (int k = 0; used < samples; ++k) {
      const double x = 0.13 + k * 0.4919;
      if (std::abs(std::remainder(x, 2.0)) < 1e-3) continue;
      worst = std::max(worst, std::abs(hyperbola_ft(mu, x, 0.0) - cross_ft_closed_form(x)));
      ++used;
    }
    c.at_most("max |hat mu(xi,0) quadrature - closed form| over " + std::to_string(samples) + " samples", worst, 1e-4);
  });
}

inline void spiral(CampaignContext& c) {
  c.guard("spiral", [&] {
    double mn = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= 990; ++k) mn = std::min(mn, std::abs(nielsen_spiral(0.1 + 0.01 * k)));
    c.at_least("min |ci(pi x) + i si(pi x)| on [0.1, 10]", mn, 1e-3);
    double g = 0.0;
    for (double xi : {0.5, 1.0, 2.5, -1.0}) g = std::max(g, std::abs(integrate_osc_halfline(xi) - osc_halfline_closed(xi)));
    c.at_most("max |int_1^inf e^{i pi xi t}/t quadrature - sici|", g, 1e-8);
    double mc = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 40; ++k) mc = std::min(mc, cross_ft_nonvanishing(0.05 + 0.25 * k));
    c.at_least("min |cross transform| at 40 points off 2Z", mc, 1e-3);
  });
}

inline void bessel_fourier(CampaignContext& c) {
  c.guard("bessel transform", [&] {
    for (cplx y : {cplx(0, 1), cplx(0, 2), cplx(1, 1)}) {
      auto r = ft_exp_inv_t_check(y);
      c.at_most("|int e^{i pi x y} x^-1/2 J1(2 sqrt x) dx - (1 - e^{-i/(pi y)})|, y=" + fmt(y.real()) + "+" +
                    fmt(y.imag()) + "i",
                r.gap, 1e-5);
    }
  });
  const double eps = c.value("eps", 1e-2);
  c.guard("regularized", [&] {
    auto r = regularized_ft_exp_check(c.list("x", {2.0, 5.0, 20.0}), eps);
    for (const auto& s : r.samples) {
      c.at_most("|regularized integral - mollified target|, x=" + fmt(s.x), s.gap, 5 * eps);
      c.at_most("|regularized integral + x^-1/2 J1(2 sqrt x)|, x=" + fmt(s.x), s.gap_unmollified, 5 * eps);
    }
  });
}

}  // namespace campaigns

/// Every campaign, in registry order.
inline const std::vector<Campaign>& registry() {
  namespace cp = campaigns;
  static const std::vector<Campaign> reg{
      {"prop-contract1", "norm contraction of the subtransfer operators; isometry on positive functions at parameter 1",
       {"beta", "gamma"}, cp::contraction},
      {"eq-duality.Uop.Wop.Cop.Kop", "subtransfer operators are preadjoint to the compressed Koopman operators",
       {"beta", "gamma"}, cp::duality},
      {"prop-kappa1", "T_beta kappa_beta = kappa_1, T_beta kappa_1 <= beta kappa_1, S_1 lambda_1 = lambda_1",
       {"beta", "eta"}, cp::kappa_invariance},
      {"prop-Wop.iter", "S_gamma^n lambda_1 <= (2 gamma/(1+gamma))^n lambda_1", {"gamma", "n_max"}, cp::lambda_iterates},
      {"prop-Uop.iter", "T_beta^n kappa_1 <= 2 beta^n/(1-beta)", {"beta", "n_max"}, cp::kappa_iterates},
      {"lem-symmetry1", "T_beta commutes with the reflection x -> -x", {"beta"}, cp::reflection},
      {"prop-increaspres1", "T_beta preserves odd increasing functions", {"beta"}, cp::odd_increasing},
      {"prop-convexitypres1", "T_beta preserves even convex positive functions", {"beta"}, cp::even_convex},
      {"prop-convexitypres2", "sandwich bound with C0 = pi^2/6 - 5/4 and C1 = pi^2/6 - 1", {"beta", "samples"},
       cp::sandwich},
      {"prop-3.8.2", "T_beta f(1) = beta f(beta) for odd continuous f", {"beta"}, cp::endpoint},
      {"prop-5.7.1", "the transfer operator T'_beta is an L1 contraction, isometric on positive functions", {"beta"},
       cp::transfer_contraction},
      {"lem-5.8.1", "weighted measures of the wandering sets E_{beta,N} and F_{gamma,N}", {"param", "n_max"},
       cp::wandering},
      {"prop-exactappl1", "L1 decay of subtransfer iterates for parameters below 1", {"param", "n"}, cp::exactness},
      {"prop-exactappl2", "L1 decay of T_1 iterates of zero-mean functions", {"n"}, cp::exactness_critical},
      {"prop-weak.convergence1", "local L1 decay of T_1 iterates on I_eta", {"eta", "n_max"}, cp::weak_convergence},
      {"prop-5.8.2", "interlacing of T'_beta, T_beta and the wandering sets", {"beta", "n_max"}, cp::interlacing},
      {"prop-5.8.2.0", "T'_beta^2 is the identity on functions supported off I_beta", {"beta"}, cp::transfer_square},
      {"eq-Hilbert02", "Hilbert transform: Poisson kernel, indicator, H^2 = -1", {"eps"}, cp::hilbert_basic},
      {"prop-weakL1cont", "weak-type (1,1) bound and weak L1 continuity of H", {"lambda", "lengths", "samples"},
       cp::weak_type},
      {"eq-tildeHilbert01", "modified Hilbert transform: kills constants, differs from H by a constant", {},
       cp::modified_hilbert},
      {"lem-tildeH2", "H~^2 f = -f + c(f)", {}, cp::modified_square},
      {"lem-Jbetacomm1.1", "J*_beta H~ f - H~ J*_beta f = c_beta(f)", {"beta"}, cp::jbeta_constant},
      {"prop-7.1.2", "H J*_beta phi = J*_beta H phi + <phi, 1/(pi t)>", {"beta"}, cp::jstar_commutator},
      {"prop-1.001", "J_beta is an L1 isometry", {"beta"}, cp::involution_isometry},
      {"prop-7.1.3", "J_beta^2 and J*_beta^2 are the identity", {"beta"}, cp::involution_square},
      {"prop-1.002", "periodization is an L1 contraction", {}, cp::periodization_contraction},
      {"eq-Pi2id1.1", "Fourier coefficients of the periodization", {"n"}, cp::periodization_fourier},
      {"prop-7.2.2", "periodization intertwines H and H2", {}, cp::periodization_intertwining},
      {"eq-Hilbert04", "periodic Hilbert transform H2 and its window limit", {}, cp::periodic_hilbert},
      {"eq-projform1", "Szego projections split the spectrum", {"y"}, cp::szego},
      {"eq-pv1001", "valeur au point by Poisson limits, independent of the cutoff", {"x"}, cp::valeur},
      {"lem-indep-of-chi01", "pev[f + Hg] = f + Hg pointwise", {}, cp::valeur_pointwise},
      {"eq-f0.101", "critical density f0: vanishing sums and lattice-cross annihilation", {"m_max", "n_max"},
       cp::f0_suite},
      {"eq-fusb1", "lattice scan detects a non-annihilating density; scaling covariance", {"mass"},
       cp::lattice_witness},
      {"eq-fusb7.4", "f0 restricted to (0,1) solves f = S_1^2 f", {}, cp::fixed_point},
      {"eq-fusb5", "extension of f0 from (0,1) to (1, inf)", {"x_max"}, cp::extension},
      {"cor-onebranch", "transform of the f0 measure on the first axis: quadrature against closed form", {"samples"},
       cp::one_branch},
      {"eq-9.1.12.11", "the Nielsen spiral ci + i si stays away from 0", {}, cp::spiral},
      {"prop-3.5", "Fourier transform of e^{i/t} through x^-1/2 J1(2 sqrt x)", {"eps", "x"}, cp::bessel_fourier},
  };
  return reg;
}

inline std::vector<std::string> campaign_ids(const std::vector<Campaign>& reg = registry()) {
  std::vector<std::string> ids;
  for (const Campaign& c : reg) ids.push_back(c.id);
  return ids;
}

/// id<TAB>anchor, one line per campaign.
inline std::string registry_listing(const std::vector<Campaign>& reg = registry()) {
  std::string s;
  for (const Campaign& c : reg) s += c.id + "\t" + c.anchor + "\n";
  return s;
}

struct RunOptions {
  std::uint64_t seed = kDefaultSeed;
  bool timing = false;
};

inline Report run_campaign(const Campaign& camp, const Overrides& overrides = {}, const RunOptions& ro = {}) {
  for (const auto& [k, v] : overrides) {
    if (std::find(camp.parameters.begin(), camp.parameters.end(), k) == camp.parameters.end())
      throw InvalidInput("campaign " + camp.id + " has no parameter '" + k + "'");
    if (v.empty()) throw InvalidInput("override '" + k + "' has no values");
  }
  Report rep;
  rep.campaign_id = camp.id;
  rep.anchor = camp.anchor;
  rep.seed = ro.seed;
  const auto t0 = std::chrono::steady_clock::now();
  CampaignContext ctx(rep, overrides, ro.seed, camp.id);
  ctx.guard("campaign", [&] { camp.body(ctx); });
  if (ro.timing) rep.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

inline Report run_campaign(const std::string& id, const Overrides& overrides = {}, const RunOptions& ro = {},
                           const std::vector<Campaign>& reg = registry()) {
  for (const Campaign& c : reg)
    if (c.id == id) return run_campaign(c, overrides, ro);
  std::string valid;
  for (const Campaign& c : reg) valid += (valid.empty() ? "" : ", ") + c.id;
  throw UnknownCampaign("unknown campaign '" + id + "'; valid ids: " + valid);
}

inline std::vector<Report> run_all(std::uint64_t seed = kDefaultSeed, const std::vector<Campaign>& reg = registry(),
                                   bool timing = false) {
  std::vector<Report> out;
  for (const Campaign& c : reg) out.push_back(run_campaign(c, {}, {seed, timing}));
  return out;
}

inline bool all_pass(const std::vector<Report>& rs) {
  return std::all_of(rs.begin(), rs.end(), [](const Report& r) { return r.pass; });
}

// ---------------------------------------------------------------------------
// JSON

inline nlohmann::ordered_json to_json(const Check& c) {
  nlohmann::ordered_json j;
  j["description"] = c.description;
  j["measured"] = std::isfinite(c.measured) ? nlohmann::ordered_json(c.measured) : nlohmann::ordered_json(nullptr);
  j["relation"] = c.relation;
  j["target"] = c.target;
  j["margin"] = std::isfinite(c.margin) ? nlohmann::ordered_json(c.margin) : nlohmann::ordered_json(nullptr);
  j["pass"] = c.pass;
  return j;
}

inline nlohmann::ordered_json to_json(const Report& r) {
  nlohmann::ordered_json j;
  j["campaign_id"] = r.campaign_id;
  j["anchor"] = r.anchor;
  j["seed"] = r.seed;
  j["parameters"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.parameters) j["parameters"][k] = v;
  j["checks"] = nlohmann::ordered_json::array();
  for (const Check& c : r.checks) j["checks"].push_back(to_json(c));
  j["pass"] = r.pass;
  if (r.wall_time_s) j["wall_time_s"] = *r.wall_time_s;
  return j;
}

inline nlohmann::ordered_json summary_json(const std::vector<Report>& rs) {
  nlohmann::ordered_json j;
  int passed = 0;
  j["campaigns"] = nlohmann::ordered_json::array();
  for (const Report& r : rs) {
    passed += r.pass;
    j["campaigns"].push_back({{"campaign_id", r.campaign_id}, {"pass", r.pass}});
  }
  j["total"] = rs.size();
  j["passed"] = passed;
  j["pass"] = passed == static_cast<int>(rs.size());
  return j;
}

}  // namespace hup
