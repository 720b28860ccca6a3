#pragma once

// Grid checks for φ-midconvexity and φ-convexity, and the support-line
// construction behind the sup-representation of φ-convex functions.

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "phiconv/grid.hpp"
#include "phiconv/modulus.hpp"
#include "phiconv/report.hpp"

namespace phiconv {

/// f((x+y)/2) <= (f(x)+f(y))/2 + φ((y-x)/2) for every pair of grid points
/// whose midpoint is a grid point. Requires a uniform grid. Witness points
/// are {x, mid, y}.
template <Modulus M>
ViolationReport check_midconvex(const GridFunction& f, const M& phi, Tolerance tol = {}) {
  if (!f.uniform()) {
    throw InputError(
        "midconvexity check needs a uniform grid; resample the function onto an "
        "arithmetic progression");
  }
  ReportBuilder rb(tol);
  const std::size_t n = f.size();
  for (std::size_t i = 0; i + 2 < n; ++i) {
    for (std::size_t j = i + 2; j < n; j += 2) {
      const std::size_t m = (i + j) / 2;
      const double rhs = 0.5 * (f.f(i) + f.f(j)) +
                         static_cast<double>(phi(0.5 * (f.x(j) - f.x(i))));
      rb.check({f.x(i), f.x(m), f.x(j)}, f.f(m), rhs);
    }
  }
  return std::move(rb).finish();
}

namespace detail {

/// (f(u) - f(x) - φ(u - x)) / (u - x) for x < u.
template <Modulus M>
double left_quotient(const GridFunction& f, const M& phi, std::size_t x, std::size_t u) {
  const double d = f.x(u) - f.x(x);
  return (f.f(u) - f.f(x) - static_cast<double>(phi(d))) / d;
}

/// (f(y) - f(u) + φ(y - u)) / (y - u) for u < y.
template <Modulus M>
double right_quotient(const GridFunction& f, const M& phi, std::size_t u, std::size_t y) {
  const double d = f.x(y) - f.x(u);
  return (f.f(y) - f.f(u) + static_cast<double>(phi(d))) / d;
}

}  // namespace detail

/// Slope criterion: for all grid triples x < u < y,
///   (f(u)-f(x)-φ(u-x))/(u-x) <= (f(y)-f(u)+φ(y-u))/(y-u).
///
/// For each middle point u this is max_x L(x,u) <= min_y R(u,y), so all
/// triples are decided in O(n^2). `checked_count` is the number of triples
/// covered; each violating middle point contributes one witness, its worst
/// triple {x, u, y}. Ties pick the smallest x and y.
template <Modulus M>
ViolationReport check_convex_slopes(const GridFunction& f, const M& phi, Tolerance tol = {}) {
  ReportBuilder rb(tol);
  const std::size_t n = f.size();
  for (std::size_t u = 1; u + 1 < n; ++u) {
    std::size_t best_x = 0;
    double max_left = detail::left_quotient(f, phi, 0, u);
    for (std::size_t x = 1; x < u; ++x) {
      const double q = detail::left_quotient(f, phi, x, u);
      if (q > max_left) {
        max_left = q;
        best_x = x;
      }
    }
    std::size_t best_y = u + 1;
    double min_right = detail::right_quotient(f, phi, u, u + 1);
    for (std::size_t y = u + 2; y < n; ++y) {
      const double q = detail::right_quotient(f, phi, u, y);
      if (q < min_right) {
        min_right = q;
        best_y = y;
      }
    }
    rb.check({f.x(best_x), f.x(u), f.x(best_y)}, max_left, min_right);
    rb.count_checked(u * (n - 1 - u) - 1);
  }
  return std::move(rb).finish();
}

/// Support slopes a(u) and intercepts b(u) = f(u) - a(u) u on the grid.
struct SupportData {
  std::vector<double> us;
  std::vector<double> a;
  std::vector<double> b;
};

/// a(u) = min over grid y > u of (f(y)-f(u)+φ(y-u))/(y-u); at the last grid
/// point, a(u) = max over x < u of (f(u)-f(x)-φ(u-x))/(u-x).
template <Modulus M>
SupportData support_slopes(const GridFunction& f, const M& phi) {
  const std::size_t n = f.size();
  SupportData sd;
  sd.us.assign(f.xs().begin(), f.xs().end());
  sd.a.resize(n);
  sd.b.resize(n);
  for (std::size_t u = 0; u + 1 < n; ++u) {
    double a = detail::right_quotient(f, phi, u, u + 1);
    for (std::size_t y = u + 2; y < n; ++y) a = std::min(a, detail::right_quotient(f, phi, u, y));
    sd.a[u] = a;
  }
  {
    const std::size_t u = n - 1;
    double a = detail::left_quotient(f, phi, 0, u);
    for (std::size_t x = 1; x < u; ++x) a = std::max(a, detail::left_quotient(f, phi, x, u));
    sd.a[u] = a;
  }
  for (std::size_t i = 0; i < n; ++i) sd.b[i] = f.f(i) - sd.a[i] * sd.us[i];
  return sd;
}

/// Support inequality f(x) - f(u) >= a(u)(x-u) - φ(|x-u|) for all grid pairs
/// x != u, checked after dividing by |x - u|:
///   x < u:  (f(u)-f(x)-φ(u-x))/(u-x) <= a(u)
///   x > u:  a(u) <= (f(x)-f(u)+φ(x-u))/(x-u)
/// Witness points are {x, u}.
template <Modulus M>
ViolationReport check_support_inequality(const GridFunction& f, const SupportData& sd,
                                         const M& phi, Tolerance tol = {}) {
  if (sd.a.size() != f.size()) throw InputError("support data does not match grid");
  ReportBuilder rb(tol);
  const std::size_t n = f.size();
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t x = 0; x < n; ++x) {
      if (x < u) {
        rb.check({f.x(x), f.x(u)}, detail::left_quotient(f, phi, x, u), sd.a[u]);
      } else if (x > u) {
        rb.check({f.x(x), f.x(u)}, sd.a[u], detail::right_quotient(f, phi, u, x));
      }
    }
  }
  return std::move(rb).finish();
}

struct Reconstruction {
  double value = 0.0;
  std::size_t argmax = 0;
  /// Magnitude of the winning term's pieces, for ulp-scale comparisons.
  double scale = 0.0;
};

/// max over grid u of a(u) x + b(u) - φ(|x - u|); ties break toward the
/// smallest u.
template <Modulus M>
Reconstruction reconstruct_sup_detail(const SupportData& sd, const M& phi, double x) {
  Reconstruction r;
  r.value = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < sd.us.size(); ++i) {
    const double lin = sd.a[i] * x;
    const double pen = static_cast<double>(phi(std::abs(x - sd.us[i])));
    const double v = lin + sd.b[i] - pen;
    if (v > r.value) {
      r.value = v;
      r.argmax = i;
      r.scale = std::abs(lin) + std::abs(sd.b[i]) + pen;
    }
  }
  return r;
}

template <Modulus M>
double reconstruct_sup(const SupportData& sd, const M& phi, double x) {
  return reconstruct_sup_detail(sd, phi, x).value;
}

inline constexpr double kRepresentationUlps = 8.0;

/// Checks that the sup-representation returns f exactly (within 8 ulps of
/// the winning term's magnitude) at every grid point. Witness points are {x}
/// with lhs = reconstruction and rhs = f(x).
template <Modulus M>
ViolationReport check_representation(const GridFunction& f, const SupportData& sd,
                                     const M& phi, Tolerance tol = {}) {
  ReportBuilder rb(tol);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Reconstruction r = reconstruct_sup_detail(sd, phi, f.x(i));
    const double scale = std::max(r.scale, std::abs(f.f(i)));
    const double allow = kRepresentationUlps * std::numeric_limits<double>::epsilon() * scale;
    rb.check_with_slack({f.x(i)}, r.value, f.f(i), std::abs(r.value - f.f(i)), allow);
  }
  return std::move(rb).finish();
}

/// The three grid verdicts of the convexity characterisation.
struct EquivalenceReport {
  ViolationReport slopes;          // slope criterion over triples
  ViolationReport support;         // support inequality with the constructed a
  ViolationReport representation;  // sup-representation equals f on the grid
  SupportData support_data;

  [[nodiscard]] bool consistent() const {
    return slopes.passed == support.passed && slopes.passed == representation.passed;
  }
};

template <Modulus M>
EquivalenceReport check_thm2_equivalence(const GridFunction& f, const M& phi, Tolerance tol = {}) {
  EquivalenceReport out;
  out.slopes = check_convex_slopes(f, phi, tol);
  out.support_data = support_slopes(f, phi);
  out.support = check_support_inequality(f, out.support_data, phi, tol);
  out.representation = check_representation(f, out.support_data, phi, tol);
  return out;
}

/// Direct convexity inequality
///   f(t x + (1-t) y) <= t f(x) + (1-t) f(y) + t φ((1-t)|x-y|) + (1-t) φ(t|x-y|)
/// for every pair x < y from `points` and every t in `ts`. Witness points
/// are {x, y, t}.
template <class F, Modulus M>
ViolationReport check_convex_direct(const F& f, const M& phi, std::span<const double> points,
                                    std::span<const double> ts, Tolerance tol = {}) {
  ReportBuilder rb(tol);
  std::vector<double> fx;
  fx.reserve(points.size());
  for (double x : points) fx.push_back(static_cast<double>(f(x)));
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      const double x = points[i];
      const double y = points[j];
      const double d = std::abs(x - y);
      for (double t : ts) {
        if (!(t >= 0.0 && t <= 1.0)) throw InputError("t values must lie in [0,1]");
        const double lhs = static_cast<double>(f(t * x + (1.0 - t) * y));
        const double rhs = t * fx[i] + (1.0 - t) * fx[j] +
                           t * static_cast<double>(phi((1.0 - t) * d)) +
                           (1.0 - t) * static_cast<double>(phi(t * d));
        rb.check({x, y, t}, lhs, rhs);
      }
    }
  }
  return std::move(rb).finish();
}

}  // namespace phiconv
