#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "phiconv/modulus.hpp"
#include "phiconv/report.hpp"

namespace phiconv {

inline constexpr int kDefaultTakagiDepth = 48;

/// Interval [lower, upper] certified to contain an exact series value
/// (up to floating-point rounding of the partial sum).
struct Enclosure {
  double lower = 0.0;
  double upper = 0.0;

  [[nodiscard]] double width() const { return upper - lower; }
  [[nodiscard]] double midpoint() const { return lower + 0.5 * (upper - lower); }
  [[nodiscard]] bool is_point() const { return lower == upper; }
  [[nodiscard]] bool contains(double v) const { return lower <= v && v <= upper; }
};

/// Distance from t to the nearest integer. Exact in floating point.
inline double dist_to_int(double t) {
  const double r = t - std::floor(t);
  return r <= 0.5 ? r : 1.0 - r;
}

/// Σ_{n>=0} φ(d(2^n t) u) / 2^n.
///
/// The first `depth` terms are summed; the remainder is bounded by
/// 2 φ(u/2) / 2^depth using d <= 1/2 and monotonicity of φ. The doubling
/// orbit is tracked exactly on the fractional part of t, so once it reaches
/// an integer (every finite double is dyadic) the remaining terms are the
/// constant φ(0) and are summed in closed form, collapsing the enclosure to a
/// point.
template <Modulus M>
Enclosure takagi_phi(const M& phi, double t, double u, int depth = kDefaultTakagiDepth) {
  if (!(u >= 0.0) || !std::isfinite(u)) throw InputError("takagi: u must be finite and >= 0");
  if (!std::isfinite(t)) throw InputError("takagi: t must be finite");
  if (depth < 1) throw InputError("takagi: depth must be >= 1");

  double r = t - std::floor(t);
  double sum = 0.0;
  double scale = 1.0;  // 2^-n
  for (int n = 0; n < depth; ++n) {
    if (r == 0.0) {
      const double v = sum + 2.0 * scale * static_cast<double>(phi(0.0));
      return {v, v};
    }
    const double d = r <= 0.5 ? r : 1.0 - r;
    sum += scale * static_cast<double>(phi(d * u));
    r *= 2.0;
    if (r >= 1.0) r -= 1.0;
    scale *= 0.5;
  }
  if (r == 0.0) {
    const double v = sum + 2.0 * scale * static_cast<double>(phi(0.0));
    return {v, v};
  }
  return {sum, sum + 2.0 * scale * static_cast<double>(phi(0.5 * u))};
}

/// Σ_{n>=0} d(2^n t)^p / 2^n, the u = 1, ε = 1 instance of takagi_phi.
inline Enclosure takagi_p(double p, double t, int depth = kDefaultTakagiDepth) {
  return takagi_phi(PhiSpec::power(1.0, p), t, 1.0, depth);
}

/// d φ((1-d)u) + (1-d) φ(d u) with d = d(t); for t in [0,1] this is the
/// error term t φ((1-t)u) + (1-t) φ(t u) of the convexity inequality.
template <Modulus M>
double tau_phi(const M& phi, double t, double u) {
  if (!(u >= 0.0)) throw InputError("tau: u must be >= 0");
  const double d = dist_to_int(t);
  return d * static_cast<double>(phi((1.0 - d) * u)) +
         (1.0 - d) * static_cast<double>(phi(d * u));
}

/// A 1-periodic function sampled at t = k / 2^m, k = 0 .. 2^m - 1.
class PeriodicTable {
 public:
  PeriodicTable(int resolution, std::vector<double> values)
      : resolution_(resolution), values_(std::move(values)) {
    if (values_.size() != (std::size_t{1} << resolution_)) {
      throw InputError("periodic table size must be 2^resolution");
    }
  }

  [[nodiscard]] int resolution() const { return resolution_; }
  [[nodiscard]] std::size_t size() const { return values_.size(); }
  [[nodiscard]] double t(std::size_t k) const {
    return std::ldexp(static_cast<double>(k), -resolution_);
  }
  [[nodiscard]] double operator[](std::size_t k) const { return values_[k]; }
  [[nodiscard]] std::span<const double> values() const { return values_; }

 private:
  int resolution_;
  std::vector<double> values_;
};

inline constexpr int kMaxTableResolution = 26;

/// k applications of f ↦ ½ f(2·) + ψ, ψ(t) = φ(d(t) u), starting from zero,
/// on the dyadic grid of resolution m (closed under doubling mod 1). The
/// result is within 2 φ(u/2) / 2^k of the Takagi-type series.
template <Modulus M>
PeriodicTable derham_iterate(const M& phi, double u, int resolution, int iterations) {
  if (resolution < 1 || resolution > kMaxTableResolution) {
    throw InputError("de Rham resolution must lie in [1, 26]");
  }
  if (iterations < 1) throw InputError("de Rham iterations must be >= 1");
  if (!(u >= 0.0) || !std::isfinite(u)) throw InputError("de Rham: u must be finite and >= 0");

  const std::size_t n = std::size_t{1} << resolution;
  const std::size_t mask = n - 1;
  std::vector<double> psi(n);
  for (std::size_t k = 0; k < n; ++k) {
    psi[k] = static_cast<double>(phi(dist_to_int(std::ldexp(static_cast<double>(k), -resolution)) * u));
  }
  std::vector<double> cur(n, 0.0);
  std::vector<double> next(n);
  for (int it = 0; it < iterations; ++it) {
    for (std::size_t k = 0; k < n; ++k) next[k] = 0.5 * cur[(2 * k) & mask] + psi[k];
    cur.swap(next);
  }
  return PeriodicTable(resolution, std::move(cur));
}

/// Lower envelope τ <= T and (when γ < 2) upper envelope T <= 2/(2-γ) τ.
struct EnvelopeReport {
  ViolationReport lower;
  /// Empty when γ >= 2: the upper envelope does not apply.
  std::optional<ViolationReport> upper;
  double factor = std::numeric_limits<double>::infinity();
};

/// Scans both envelope inequalities over `t_grid`. Comparisons use the
/// enclosure endpoints: a bound is violated only if it fails against the
/// favourable endpoint, and counted indeterminate if it fails only against
/// the unfavourable one. Witness points are {t}.
template <Modulus M>
EnvelopeReport check_envelope_bounds(const M& phi, double u, std::span<const double> t_grid,
                                     double gamma, int depth = kDefaultTakagiDepth,
                                     Tolerance tol = {}) {
  ReportBuilder lower(tol);
  std::optional<ReportBuilder> upper;
  EnvelopeReport out;
  if (gamma < 2.0) {
    upper.emplace(tol);
    out.factor = 2.0 / (2.0 - gamma);
  }
  for (double t : t_grid) {
    const Enclosure tt = takagi_phi(phi, t, u, depth);
    const double tau = tau_phi(phi, t, u);

    const double lo_allow = tol.allowance(tau, tt.upper);
    lower.check_with_slack({t}, tau, tt.upper, tau - tt.upper, lo_allow);
    if (tau - tt.lower > lo_allow && tau - tt.upper <= lo_allow) lower.mark_indeterminate();

    if (upper) {
      const double bound = out.factor * tau;
      const double up_allow = tol.allowance(tt.lower, bound);
      upper->check_with_slack({t}, tt.lower, bound, tt.lower - bound, up_allow);
      if (tt.upper - bound > up_allow && tt.lower - bound <= up_allow) {
        upper->mark_indeterminate();
      }
    }
  }
  out.lower = std::move(lower).finish();
  if (upper) out.upper = std::move(*upper).finish();
  return out;
}

}  // namespace phiconv
