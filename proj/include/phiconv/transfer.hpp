#pragma once

// From midconvexity to convexity: the doubling-ratio factor, the dyadic
// induction bound, and the end-to-end pipeline.

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "phiconv/convexity.hpp"
#include "phiconv/grid.hpp"
#include "phiconv/modulus.hpp"
#include "phiconv/modulus_props.hpp"
#include "phiconv/numeric_text.hpp"
#include "phiconv/report.hpp"
#include "phiconv/takagi.hpp"

namespace phiconv {

struct TransferResult {
  double gamma = 1.0;
  /// 2/(2-γ) when applicable, +inf otherwise.
  double factor = kInfinity;
  /// factor · φ; empty when not applicable.
  std::optional<PhiSpec> effective_spec;
  bool applicable = false;
};

/// Computes γ_φ and, when γ < 2, the modulus 2/(2-γ)·φ that a locally
/// bounded φ-midconvex function is guaranteed to be convex with. A power
/// modulus ε s^p maps to the power modulus (2ε/(2-2^p)) s^p.
inline TransferResult effective_modulus(const PhiSpec& spec, double alpha) {
  TransferResult out;
  out.gamma = gamma_phi(spec, alpha).value;
  out.applicable = out.gamma < 2.0;
  if (out.applicable) {
    out.factor = 2.0 / (2.0 - out.gamma);
    out.effective_spec = scaled(spec, out.factor);
  }
  return out;
}

inline constexpr int kMaxInductionDepth = 20;
inline constexpr std::size_t kChordSweepPoints = std::size_t{1} << 16;
inline constexpr double kChordBoundMargin = 1e-6;

/// t ↦ f(t x + (1-t) y) - t f(x) - (1-t) f(y).
template <class F>
double chord_deficit(const F& f, double x, double y, double t) {
  return static_cast<double>(f(t * x + (1.0 - t) * y)) - t * static_cast<double>(f(x)) -
         (1.0 - t) * static_cast<double>(f(y));
}

struct ChordSweep {
  double max_deficit = -kInfinity;
  double argmax_t = 0.0;
};

/// Maximum chord deficit over t = k / `points`, k = 0 .. points.
template <class F>
ChordSweep sweep_chord_deficit(const F& f, double x, double y,
                               std::size_t points = kChordSweepPoints) {
  ChordSweep s;
  for (std::size_t k = 0; k <= points; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(points);
    const double d = chord_deficit(f, x, y, t);
    if (d > s.max_deficit) {
      s.max_deficit = d;
      s.argmax_t = t;
    }
  }
  return s;
}

/// An upper bound K for the chord deficit: the swept maximum plus a margin.
template <class F>
double estimate_chord_bound(const F& f, double x, double y,
                            std::size_t points = kChordSweepPoints,
                            double margin = kChordBoundMargin) {
  return sweep_chord_deficit(f, x, y, points).max_deficit + margin;
}

/// Right-hand side of the depth-n induction bound at t:
///   t f(x) + (1-t) f(y) + K/2^n + Σ_{j<n} φ(d(2^j t)|x-y|)/2^j.
template <Modulus M>
double induction_rhs(const M& phi, double fx, double fy, double t, double dist, double bound_k,
                     int n) {
  double sum = 0.0;
  double r = t - std::floor(t);
  for (int j = 0; j < n; ++j) {
    sum += std::ldexp(static_cast<double>(phi(dist_to_int(r) * dist)), -j);
    r *= 2.0;
    if (r >= 1.0) r -= 1.0;
  }
  return t * fx + (1.0 - t) * fy + std::ldexp(bound_k, -n) + sum;
}

struct InductionReport {
  ViolationReport induction;  // depth-n bound at every t = k/2^n
  ViolationReport limit;      // limit bound with the certified Takagi envelope
};

/// Verifies, at every dyadic t = k/2^n,
///   f(t x + (1-t) y) <= t f(x) + (1-t) f(y) + K/2^n + Σ_{j<n} φ(d(2^j t)|x-y|)/2^j
/// and its limit form with T_φ(t, |x-y|) (enclosure upper end). K is first
/// validated against a 2^16-point sweep of the chord deficit; a K below the
/// swept maximum is an input error naming the offending t. Witness points
/// are {t}.
template <class F, Modulus M>
InductionReport dyadic_induction_check(const F& f, const M& phi, double x, double y, int n,
                                       double bound_k, Tolerance tol = {},
                                       int takagi_depth = kDefaultTakagiDepth) {
  if (n < 0 || n > kMaxInductionDepth) throw InputError("induction depth must lie in [0, 20]");
  if (!std::isfinite(x) || !std::isfinite(y)) throw InputError("chord endpoints must be finite");
  if (!std::isfinite(bound_k)) throw InputError("chord bound K must be finite");
  const ChordSweep sweep = sweep_chord_deficit(f, x, y);
  if (sweep.max_deficit > bound_k) {
    throw InputError("K = " + format_double(bound_k) + " is not an upper bound of the chord " +
                     "deficit: at t = " + format_double(sweep.argmax_t) + " it reaches " +
                     format_double(sweep.max_deficit));
  }

  const double fx = static_cast<double>(f(x));
  const double fy = static_cast<double>(f(y));
  const double dist = std::abs(x - y);
  const std::size_t count = std::size_t{1} << n;
  ReportBuilder induction(tol);
  ReportBuilder limit(tol);
  for (std::size_t k = 0; k <= count; ++k) {
    const double t = std::ldexp(static_cast<double>(k), -n);
    const double lhs = static_cast<double>(f(t * x + (1.0 - t) * y));
    induction.check({t}, lhs, induction_rhs(phi, fx, fy, t, dist, bound_k, n));
    const Enclosure tt = takagi_phi(phi, t, dist, takagi_depth);
    limit.check({t}, lhs, t * fx + (1.0 - t) * fy + tt.upper);
  }
  return {std::move(induction).finish(), std::move(limit).finish()};
}

enum class TransferStatus { passed, midconvexity_failed, inapplicable, convexity_failed };

inline std::string to_string(TransferStatus s) {
  switch (s) {
    case TransferStatus::passed: return "passed";
    case TransferStatus::midconvexity_failed: return "midconvexity_failed";
    case TransferStatus::inapplicable: return "inapplicable";
    case TransferStatus::convexity_failed: return "convexity_failed";
  }
  return "unknown";
}

struct TransferReport {
  TransferResult transfer;
  ViolationReport midconvexity;
  /// Only present when the transfer applies and midconvexity holds.
  std::optional<ViolationReport> convexity;
  TransferStatus status = TransferStatus::passed;

  [[nodiscard]] bool passed() const { return status == TransferStatus::passed; }
};

namespace detail {

template <class ConvexityCheck>
TransferReport run_transfer(const PhiSpec& spec, double alpha, ViolationReport midconvexity,
                            ConvexityCheck&& convexity_check) {
  TransferReport out;
  out.transfer = effective_modulus(spec, alpha);
  out.midconvexity = std::move(midconvexity);
  if (!out.midconvexity.passed) {
    out.status = TransferStatus::midconvexity_failed;
  } else if (!out.transfer.applicable) {
    out.status = TransferStatus::inapplicable;
  } else {
    out.convexity = convexity_check(*out.transfer.effective_spec);
    out.status = out.convexity->passed ? TransferStatus::passed : TransferStatus::convexity_failed;
  }
  return out;
}

}  // namespace detail

/// Grid pipeline: midconvexity with φ on the (uniform) grid, then the slope
/// criterion with 2/(2-γ)·φ, γ taken with α from the grid's domain.
inline TransferReport transfer_pipeline(const GridFunction& f, const PhiSpec& spec,
                                        Tolerance tol = {}) {
  return detail::run_transfer(spec, f.domain().alpha(), check_midconvex(f, spec, tol),
                              [&](const PhiSpec& eff) { return check_convex_slopes(f, eff, tol); });
}

struct SweepOptions {
  std::size_t midconvex_points = 1025;  // uniform grid for the midconvexity check
  std::size_t pair_points = 33;         // points whose pairs are swept
  int t_levels = 6;                     // t = k / 2^levels
};

/// Analytic pipeline: midconvexity on a uniform sample of [lo, hi] ⊂ D,
/// then the direct convexity inequality with 2/(2-γ)·φ at dyadic t for all
/// pairs of a coarser uniform sample.
template <class F>
TransferReport transfer_pipeline(const F& f, const PhiSpec& spec, double lo, double hi,
                                 DomainSpec domain, Tolerance tol = {}, SweepOptions opt = {}) {
  if (!(lo < hi)) throw InputError("sweep interval needs lo < hi");
  const GridFunction g = GridFunction::sample(f, linspace(lo, hi, opt.midconvex_points), domain);
  const std::vector<double> points = linspace(lo, hi, opt.pair_points);
  std::vector<double> ts;
  const std::size_t levels = std::size_t{1} << opt.t_levels;
  for (std::size_t k = 0; k <= levels; ++k) ts.push_back(std::ldexp(static_cast<double>(k), -opt.t_levels));
  return detail::run_transfer(spec, domain.alpha(), check_midconvex(g, spec, tol),
                              [&](const PhiSpec& eff) {
                                return check_convex_direct(f, eff, points, ts, tol);
                              });
}

}  // namespace phiconv
