#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "phiconv/grid.hpp"
#include "phiconv/modulus.hpp"
#include "phiconv/report.hpp"

namespace phiconv {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Doubling ratio γ_φ = sup_{0 < s <= α/2} φ(2s)/φ(s).
struct GammaEstimate {
  double value = 1.0;
  /// True when `value` is the maximum over a finite sample of s and hence a
  /// lower estimate of the supremum.
  bool sampled = false;
};

namespace detail {

inline void check_alpha(double alpha) {
  if (!(alpha > 0.0)) throw InputError("alpha must be positive (or inf)");
}

inline double gamma_from_atoms(const std::vector<Atom>& atoms, double alpha) {
  if (atoms.size() == 1) return std::exp2(atoms.front().exponent);
  if (std::isinf(alpha)) return std::exp2(atoms.back().exponent);
  double num = 0.0;
  double den = 0.0;
  for (const Atom& a : atoms) {
    num += a.weight * std::pow(alpha, a.exponent);
    den += a.weight * std::pow(alpha / 2.0, a.exponent);
  }
  return num / den;
}

}  // namespace detail

/// Closed-form doubling ratio. Every spec flattens to Σ w_k s^{p_k}; for a
/// single atom the ratio is 2^p, for α = ∞ it is 2^{p_max}, otherwise
/// Σ w_k α^{p_k} / Σ w_k (α/2)^{p_k}.
inline GammaEstimate gamma_phi(const PhiSpec& spec, double alpha) {
  detail::check_alpha(alpha);
  const auto atoms = spec.flatten();
  if (atoms.empty()) {
    throw InputError("modulus vanishes on (0, alpha/2); doubling ratio undefined");
  }
  return {detail::gamma_from_atoms(atoms, alpha), false};
}

/// Numeric supremum of φ(2s)/φ(s) over a geometric sample of (0, α/2],
/// refined until the maximum stabilises. For α = ∞ the sample tops out at
/// 2^40.
template <Modulus M>
GammaEstimate sampled_gamma(const M& phi, double alpha) {
  detail::check_alpha(alpha);
  const double top = std::isinf(alpha) ? std::ldexp(1.0, 40) : alpha / 2.0;
  constexpr int kOctaves = 80;
  double best = -kInfinity;
  for (int per_octave = 8; per_octave <= 1024; per_octave *= 2) {
    double current = -kInfinity;
    const int n = kOctaves * per_octave;
    for (int k = 0; k <= n; ++k) {
      const double s = top * std::exp2(-static_cast<double>(k) / per_octave);
      const double den = static_cast<double>(phi(s));
      if (!(den > 0.0)) {
        throw InputError("modulus vanishes at a positive argument; doubling ratio undefined");
      }
      current = std::max(current, static_cast<double>(phi(2.0 * s)) / den);
    }
    const bool stable = std::abs(current - best) <= 1e-12 * std::abs(current);
    best = std::max(best, current);
    if (stable) break;
  }
  return {best, true};
}

/// χ(s) = Σ w_k (2s)^{p_k} / Σ w_k s^{p_k}.
inline double chi(const DiscreteMeasure& measure, double s) {
  if (!(s > 0.0)) throw InputError("chi requires s > 0");
  double num = 0.0;
  double den = 0.0;
  for (const Atom& a : measure.atoms()) {
    const double sp = std::pow(s, a.exponent);
    num += a.weight * std::exp2(a.exponent) * sp;
    den += a.weight * sp;
  }
  return num / den;
}

/// Brute-force check of φ(u) <= φ(v) + φ(w) over all sample triples with
/// u <= v + w. Duplicate sample values are collapsed; witnesses carry
/// points {u, v, w} with v <= w.
template <Modulus M>
ViolationReport check_increasing_subadditivity(const M& phi, std::span<const double> sample,
                                               Tolerance tol = {}) {
  if (sample.empty()) throw InputError("subadditivity sample is empty");
  std::vector<double> pts(sample.begin(), sample.end());
  for (double s : pts) {
    if (!(s >= 0.0) || !std::isfinite(s)) {
      throw InputError("subadditivity sample must be finite and nonnegative");
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<double> vals;
  vals.reserve(pts.size());
  for (double s : pts) vals.push_back(static_cast<double>(phi(s)));

  ReportBuilder rb(tol);
  for (std::size_t iu = 0; iu < pts.size(); ++iu) {
    for (std::size_t iv = 0; iv < pts.size(); ++iv) {
      for (std::size_t iw = iv; iw < pts.size(); ++iw) {
        if (pts[iu] > pts[iv] + pts[iw]) continue;
        rb.check({pts[iu], pts[iv], pts[iw]}, vals[iu], vals[iv] + vals[iw]);
      }
    }
  }
  return std::move(rb).finish();
}

struct HolderModulus {
  double value = 0.0;
  /// Set when some pair has φ(|x - y|) = 0 but f(x) != f(y).
  bool infinite = false;
};

/// sup over grid pairs of |f(x) - f(y)| / φ(|x - y|).
template <Modulus M>
HolderModulus holder_modulus(const GridFunction& f, const M& phi) {
  HolderModulus out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = i + 1; j < f.size(); ++j) {
      const double diff = std::abs(f.f(j) - f.f(i));
      const double allowance = static_cast<double>(phi(f.x(j) - f.x(i)));
      if (allowance == 0.0) {
        if (diff != 0.0) {
          out.infinite = true;
          out.value = kInfinity;
        }
        continue;
      }
      out.value = std::max(out.value, diff / allowance);
    }
  }
  return out;
}

}  // namespace phiconv
