#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <limits>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "phiconv/numeric_text.hpp"
#include "phiconv/report.hpp"

namespace phiconv {

/// Anything that maps a nonnegative distance to a nonnegative error allowance.
template <class M>
concept Modulus = std::regular_invocable<const M&, double> &&
    std::convertible_to<std::invoke_result_t<const M&, double>, double>;

/// Open interval D = (lo, hi); `alpha()` is sup D^+ = hi - lo.
struct DomainSpec {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  DomainSpec() = default;
  DomainSpec(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (std::isnan(lo) || std::isnan(hi) || !(lo < hi)) {
      throw InputError("domain requires lo < hi");
    }
  }

  static DomainSpec real_line() { return {}; }

  [[nodiscard]] double alpha() const { return hi - lo; }
  [[nodiscard]] bool contains(double x) const { return lo < x && x < hi; }
};

struct Atom {
  double exponent = 0.0;
  double weight = 0.0;
  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Finitely many atoms (p_k, w_k) on [0, 1] with w_k > 0, sorted by exponent.
class DiscreteMeasure {
 public:
  explicit DiscreteMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
    if (atoms_.empty()) throw InputError("measure needs at least one atom");
    for (const Atom& a : atoms_) {
      if (!(a.exponent >= 0.0 && a.exponent <= 1.0)) {
        throw InputError("measure exponent " + format_double(a.exponent) +
                         " outside [0,1]; moduli with p > 1 are not subadditive");
      }
      if (!(a.weight > 0.0) || !std::isfinite(a.weight)) {
        throw InputError("measure weights must be finite and positive");
      }
    }
    std::sort(atoms_.begin(), atoms_.end(),
              [](const Atom& a, const Atom& b) { return a.exponent < b.exponent; });
    for (std::size_t i = 1; i < atoms_.size(); ++i) {
      if (atoms_[i].exponent == atoms_[i - 1].exponent) {
        throw InputError("measure exponents must be pairwise distinct");
      }
    }
  }

  [[nodiscard]] const std::vector<Atom>& atoms() const { return atoms_; }
  /// Largest exponent, i.e. sup of the support.
  [[nodiscard]] double max_exponent() const { return atoms_.back().exponent; }

  /// Σ w_k s^{p_k}, with every term vanishing at s = 0.
  [[nodiscard]] double integrate_power(double s) const {
    if (s == 0.0) return 0.0;
    double sum = 0.0;
    for (const Atom& a : atoms_) sum += a.weight * std::pow(s, a.exponent);
    return sum;
  }

  friend bool operator==(const DiscreteMeasure&, const DiscreteMeasure&) = default;

 private:
  std::vector<Atom> atoms_;
};

class PhiSpec;

struct PowerModulus {
  double epsilon = 0.0;
  double exponent = 0.0;
  friend bool operator==(const PowerModulus&, const PowerModulus&) = default;
};

struct MixtureModulus {
  DiscreteMeasure measure;
  friend bool operator==(const MixtureModulus&, const MixtureModulus&) = default;
};

struct CombinationTerm;

struct CombinationModulus {
  std::vector<CombinationTerm> terms;
  friend bool operator==(const CombinationModulus&, const CombinationModulus&);
};

/// An error modulus φ: ε s^p, Σ w_k s^{p_k}, or a nonnegative combination of
/// those. Every value is nondecreasing and subadditive on [0, ∞) with
/// φ(0) = 0 (the p = 0 term is ε on (0, ∞) and 0 at the origin).
class PhiSpec {
 public:
  using Variant = std::variant<PowerModulus, MixtureModulus, CombinationModulus>;

  static PhiSpec power(double epsilon, double exponent) {
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
      throw InputError("power modulus needs a finite epsilon >= 0");
    }
    check_exponent(exponent);
    return PhiSpec(PowerModulus{epsilon, exponent});
  }

  static PhiSpec mixture(DiscreteMeasure measure) {
    return PhiSpec(MixtureModulus{std::move(measure)});
  }

  static PhiSpec combination(std::vector<CombinationTerm> terms);

  /// φ ≡ 0.
  static PhiSpec zero() { return power(0.0, 1.0); }

  [[nodiscard]] const Variant& variant() const { return v_; }

  /// Evaluates φ(s); rejects negative or NaN s.
  double operator()(double s) const {
    if (!(s >= 0.0)) throw InputError("modulus argument must be nonnegative");
    return eval_unchecked(s);
  }

  [[nodiscard]] double eval_unchecked(double s) const;

  /// Collapses the spec into atoms Σ w_k s^{p_k}; zero-weight atoms are
  /// dropped and equal exponents merged. Empty iff φ ≡ 0.
  [[nodiscard]] std::vector<Atom> flatten() const;

  friend bool operator==(const PhiSpec&, const PhiSpec&) = default;

 private:
  explicit PhiSpec(Variant v) : v_(std::move(v)) {}

  static void check_exponent(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw InputError("exponent " + format_double(p) +
                       " outside [0,1]; s^p is not subadditive for p > 1");
    }
  }

  Variant v_;
};

struct CombinationTerm {
  double coefficient = 0.0;
  PhiSpec spec;
  friend bool operator==(const CombinationTerm&, const CombinationTerm&) = default;
};

inline bool operator==(const CombinationModulus& a, const CombinationModulus& b) {
  return a.terms == b.terms;
}

inline PhiSpec PhiSpec::combination(std::vector<CombinationTerm> terms) {
  if (terms.empty()) throw InputError("combination needs at least one term");
  for (const auto& t : terms) {
    if (!(t.coefficient >= 0.0) || !std::isfinite(t.coefficient)) {
      throw InputError("combination coefficients must be finite and >= 0");
    }
  }
  return PhiSpec(CombinationModulus{std::move(terms)});
}

inline double PhiSpec::eval_unchecked(double s) const {
  if (s == 0.0) return 0.0;
  return std::visit(
      [s](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, PowerModulus>) {
          return m.epsilon * std::pow(s, m.exponent);
        } else if constexpr (std::is_same_v<T, MixtureModulus>) {
          return m.measure.integrate_power(s);
        } else {
          double sum = 0.0;
          for (const auto& term : m.terms) {
            sum += term.coefficient * term.spec.eval_unchecked(s);
          }
          return sum;
        }
      },
      v_);
}

namespace detail {

inline void flatten_into(const PhiSpec& spec, double scale, std::vector<Atom>& out) {
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, PowerModulus>) {
          out.push_back({m.exponent, scale * m.epsilon});
        } else if constexpr (std::is_same_v<T, MixtureModulus>) {
          for (const Atom& a : m.measure.atoms()) {
            out.push_back({a.exponent, scale * a.weight});
          }
        } else {
          for (const auto& term : m.terms) {
            flatten_into(term.spec, scale * term.coefficient, out);
          }
        }
      },
      spec.variant());
}

}  // namespace detail

inline std::vector<Atom> PhiSpec::flatten() const {
  std::vector<Atom> raw;
  detail::flatten_into(*this, 1.0, raw);
  std::sort(raw.begin(), raw.end(),
            [](const Atom& a, const Atom& b) { return a.exponent < b.exponent; });
  std::vector<Atom> merged;
  for (const Atom& a : raw) {
    if (a.weight == 0.0) continue;
    if (!merged.empty() && merged.back().exponent == a.exponent) {
      merged.back().weight += a.weight;
    } else {
      merged.push_back(a);
    }
  }
  return merged;
}

/// φ(s) with input validation.
inline double eval_phi(const PhiSpec& spec, double s) { return spec(s); }

/// c · φ as a new spec.
inline PhiSpec scaled(const PhiSpec& spec, double factor) {
  if (const auto* p = std::get_if<PowerModulus>(&spec.variant())) {
    return PhiSpec::power(factor * p->epsilon, p->exponent);
  }
  return PhiSpec::combination({{factor, spec}});
}

}  // namespace phiconv
