#pragma once

// Gauss-type maps σ_γ(x) = {γ/x}₁ on (0,1) and τ_β(x) = {-β/x}₂ on (-1,1],
// their orbits and wandering sets.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "hup/errors.hpp"

namespace hup {

/// y ∈ [0,1) with x - y ∈ ℤ.
inline double frac1(double x) {
  double y = x - std::floor(x);
  return y >= 1.0 ? 0.0 : y;
}

/// y ∈ (-1,1] with x - y ∈ 2ℤ.
inline double frac2(double x) {
  double y = x - 2.0 * std::ceil((x - 1.0) / 2.0);
  if (y <= -1.0) y += 2.0;
  if (y > 1.0) y -= 2.0;
  return y;
}

enum class Family { SigmaGauss, TauGauss };

struct MapParams {
  Family family = Family::TauGauss;
  double param = 1.0;

  static MapParams sigma(double gamma) { return {Family::SigmaGauss, gamma}; }
  static MapParams tau(double beta) { return {Family::TauGauss, beta}; }

  void validate() const {
    if (!(param > 0.0 && param <= 1.0)) throw InvalidInput("MapParams: parameter must lie in (0, 1]");
  }
  /// Closed core interval Ī_β = [-β, β] or Ī_γ⁺ = [0, γ].
  double core_lo() const { return family == Family::TauGauss ? -param : 0.0; }
  double core_hi() const { return param; }
  /// Ambient interval I₁ = (-1, 1) or I₁⁺ = (0, 1).
  double domain_lo() const { return family == Family::TauGauss ? -1.0 : 0.0; }
  double domain_hi() const { return 1.0; }
  bool in_core(double x) const { return x >= core_lo() && x <= core_hi(); }
};

inline double apply_map(const MapParams& p, double x) {
  if (x == 0.0) throw InvalidInput("apply_map: undefined at 0");
  if (p.family == Family::SigmaGauss) {
    if (!(x > 0.0 && x < 1.0)) throw InvalidInput("apply_map: sigma map needs x in (0,1)");
    return frac1(p.param / x);
  }
  if (!(x > -1.0 && x <= 1.0)) throw InvalidInput("apply_map: tau map needs x in (-1,1]");
  return frac2(-p.param / x);
}

/// [x, T x, ..., T^n x]; throws OrbitHitsZero if an iterate before the last is 0.
inline std::vector<double> orbit(const MapParams& p, double x, int n) {
  std::vector<double> out{x};
  out.reserve(n + 1);
  for (int k = 0; k < n; ++k) {
    if (out.back() == 0.0) throw OrbitHitsZero("orbit: iterate " + std::to_string(k) + " is 0", k);
    out.push_back(apply_map(p, out.back()));
  }
  return out;
}

/// Wandering set 𝓔_{β,N} (τ family) or 𝓕_{γ,N} (σ family).
struct WanderingQuery {
  MapParams params;
  int depth = 1;
  void validate() const {
    params.validate();
    if (depth < 1) throw InvalidInput("WanderingQuery: depth must be >= 1");
  }
};

struct MembershipTest {
  bool member = false;
  bool hit_zero = false;
};

inline MembershipTest test_wandering_prefix(const WanderingQuery& q, double x) {
  const MapParams& p = q.params;
  if (!p.in_core(x)) return {false, false};
  double y = x;
  for (int n = 1; n < q.depth; ++n) {
    if (y == 0.0) return {false, true};
    y = p.family == Family::SigmaGauss ? frac1(p.param / y) : frac2(-p.param / y);
    if (!p.in_core(y)) return {false, false};
  }
  return {true, false};
}

inline bool in_wandering_prefix(const WanderingQuery& q, double x) { return test_wandering_prefix(q, x).member; }

enum class Weight { Lambda1, Kappa1 };

struct WanderingEstimate {
  double value = 0.0;
  long zero_hits = 0;
};

inline double weight_mass(Weight w, double a, double b) {
  constexpr double eta = 1.0 - 1e-6;
  if (w == Weight::Lambda1) return std::log1p(b) - std::log1p(a);
  return std::atanh(std::clamp(b, -eta, eta)) - std::atanh(std::clamp(a, -eta, eta));
}

/// Stratified orbit sampling: one golden-ratio jittered point per cell times
/// the exact weight mass of the cell. Converges slowly; a diagnostic only.
inline WanderingEstimate wandering_measure_detail(const WanderingQuery& q, Weight w, long resolution) {
  q.validate();
  if (resolution < 1000) throw InvalidInput("wandering_measure: resolution must be >= 1000");
  constexpr double phi = 0.6180339887498949;
  const double lo = q.params.core_lo(), hi = q.params.core_hi();
  WanderingEstimate est;
  const double h = (hi - lo) / resolution;
  double sum = 0.0, comp = 0.0;
  for (long i = 0; i < resolution; ++i) {
    const double x0 = lo + i * h, x1 = (i + 1 == resolution) ? hi : lo + (i + 1) * h;
    const double u = std::fmod((i + 1) * phi, 1.0);
    auto t = test_wandering_prefix(q, x0 + u * (x1 - x0));
    est.zero_hits += t.hit_zero;
    if (t.member) {
      double y = weight_mass(w, x0, x1) - comp;
      double s = sum + y;
      comp = (s - sum) - y;
      sum = s;
    }
  }
  est.value = sum;
  return est;
}

inline double wandering_measure(const WanderingQuery& q, Weight w, long resolution) {
  return wandering_measure_detail(q, w, resolution).value;
}

/// Branch digits of the orbit prefix up to the first exit from the core,
/// with the exit side. Equal keys at two points force equal membership on
/// the whole segment between them: both lie in one cylinder, on which every
/// iterate is monotone and continuous.
struct OrbitKey {
  static constexpr int kMaxDepth = 12;
  std::array<long, kMaxDepth> digit{};
  int length = 0;
  int status = 0;  // 0 member, -1/+1 exit below/above, 2 hit zero

  bool operator==(const OrbitKey& o) const {
    if (length != o.length || status != o.status) return false;
    for (int i = 0; i < length; ++i)
      if (digit[i] != o.digit[i]) return false;
    return true;
  }
};

inline OrbitKey orbit_key(const WanderingQuery& q, double x) {
  const MapParams& p = q.params;
  OrbitKey k;
  auto classify = [&](double y) { return y < p.core_lo() ? -1 : (y > p.core_hi() ? 1 : 0); };
  double y = x;
  if ((k.status = classify(y)) != 0) return k;
  for (int n = 1; n < q.depth; ++n) {
    if (y == 0.0) {
      k.status = 2;
      return k;
    }
    long d;
    if (p.family == Family::SigmaGauss) {
      const double u = p.param / y;
      y = frac1(u);
      d = std::lround(u - y);
    } else {
      const double u = -p.param / y;
      y = frac2(u);
      d = std::lround(0.5 * (u - y));
    }
    k.digit[k.length++] = d;
    if ((k.status = classify(y)) != 0) return k;
  }
  return k;
}

struct CylinderOptions {
  long initial_cells = 4096;
  double min_width = 1e-10;
};

struct CylinderEstimate {
  double value = 0.0;
  double unresolved = 0.0;  // mass of segments decided by their midpoint only
  long leaves = 0;
};

/// ∫_{wandering set} of a density given by its segment masses, bisecting
/// until both ends of a segment carry the same orbit key.
template <class Mass>
CylinderEstimate wandering_integral(const WanderingQuery& q, Mass&& mass, const CylinderOptions& opt = {}) {
  q.validate();
  if (q.depth > OrbitKey::kMaxDepth) throw InvalidInput("wandering_integral: depth too large for cylinder resolution");
  if (opt.initial_cells < 1 || !(opt.min_width > 0)) throw InvalidInput("wandering_integral: bad options");
  struct Seg {
    double a, b;
    OrbitKey ka, kb;
  };
  const double lo = q.params.core_lo(), hi = q.params.core_hi();
  CylinderEstimate est;
  double comp = 0.0;
  auto add = [&](double v) {
    double y = v - comp, s = est.value + y;
    comp = (s - est.value) - y;
    est.value = s;
  };
  std::vector<Seg> stack;
  OrbitKey prev = orbit_key(q, lo);
  for (long i = 0; i < opt.initial_cells; ++i) {
    const double a = lo + (hi - lo) * i / opt.initial_cells;
    const double b = (i + 1 == opt.initial_cells) ? hi : lo + (hi - lo) * (i + 1) / opt.initial_cells;
    OrbitKey kb = orbit_key(q, b);
    stack.push_back({a, b, prev, kb});
    while (!stack.empty()) {
      Seg s = stack.back();
      stack.pop_back();
      if (s.ka == s.kb) {
        ++est.leaves;
        if (s.ka.status == 0) add(mass(s.a, s.b));
        continue;
      }
      const double m = 0.5 * (s.a + s.b);
      OrbitKey km = orbit_key(q, m);
      if (s.b - s.a < opt.min_width) {
        ++est.leaves;
        const double v = mass(s.a, s.b);
        est.unresolved += std::abs(v);
        if (km.status == 0) add(v);
        continue;
      }
      stack.push_back({m, s.b, km, s.kb});
      stack.push_back({s.a, m, s.ka, km});
    }
    prev = kb;
  }
  return est;
}

/// (2γ/(1+γ))^N log 2 for 𝓕 with weight λ₁, 4β^N/(1-β) for 𝓔 with weight κ₁.
inline double wandering_bound(const WanderingQuery& q) {
  const double t = q.params.param;
  if (!(t < 1.0)) throw InvalidInput("wandering_bound: the bound requires a parameter strictly below 1");
  if (q.params.family == Family::SigmaGauss) return std::pow(2.0 * t / (1.0 + t), q.depth) * std::numbers::ln2;
  return 4.0 * std::pow(t, q.depth) / (1.0 - t);
}

}  // namespace hup
