#pragma once

// Seeded generators for randomized checks: moduli and grid functions with a
// known expected verdict.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "phiconv/catalog.hpp"
#include "phiconv/grid.hpp"
#include "phiconv/modulus.hpp"

namespace phiconv {

/// Thin wrapper over mt19937_64 with distribution code that does not depend
/// on the standard library implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform in [lo, hi).
  double uniform(double lo = 0.0, double hi = 1.0) {
    const double u = std::ldexp(static_cast<double>(gen_() >> 11), -53);
    return lo + (hi - lo) * u;
  }

  /// Uniform integer in [lo, hi].
  std::size_t index(std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(gen_() % (hi - lo + 1));
  }

  std::uint64_t bits() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

inline PhiSpec random_power(Rng& rng, bool allow_zero_exponent = true) {
  const double p = allow_zero_exponent && rng.uniform() < 0.15 ? 0.0 : rng.uniform(0.05, 1.0);
  return PhiSpec::power(rng.uniform(0.1, 3.0), p);
}

inline DiscreteMeasure random_measure(Rng& rng, std::size_t atoms) {
  std::vector<Atom> out;
  while (out.size() < atoms) {
    const double p = std::round(rng.uniform() * 1000.0) / 1000.0;
    if (std::any_of(out.begin(), out.end(), [&](const Atom& a) { return a.exponent == p; })) continue;
    out.push_back({p, rng.uniform(0.1, 2.0)});
  }
  return DiscreteMeasure(std::move(out));
}

/// A power, mixture, or combination modulus.
inline PhiSpec random_phi(Rng& rng) {
  switch (rng.index(0, 2)) {
    case 0:
      return random_power(rng);
    case 1:
      return PhiSpec::mixture(random_measure(rng, rng.index(1, 4)));
    default: {
      std::vector<CombinationTerm> terms;
      const std::size_t n = rng.index(2, 3);
      for (std::size_t i = 0; i < n; ++i) {
        PhiSpec inner = rng.uniform() < 0.5 ? random_power(rng)
                                            : PhiSpec::mixture(random_measure(rng, rng.index(1, 3)));
        terms.push_back({rng.uniform(0.1, 2.0), std::move(inner)});
      }
      return PhiSpec::combination(std::move(terms));
    }
  }
}

struct FuzzCase {
  std::string label;
  GridFunction f;
  PhiSpec phi;
  /// Verdict the slope criterion must reach by construction.
  bool expect_convex = true;
};

/// Grid functions on (-1, 1): a convex base (quadratic plus exponential),
/// optionally perturbed, paired with a modulus for which the result is
/// φ-convex (exact, bounded noise, Hölder dent) or clearly not (kink, spike).
inline std::vector<FuzzCase> generate_fuzz_cases(std::size_t count, std::uint64_t seed,
                                                 std::size_t grid_points = 64) {
  Rng rng(seed);
  const DomainSpec domain(-1.0, 1.0);
  std::vector<FuzzCase> cases;
  cases.reserve(count);
  for (std::size_t c = 0; c < count; ++c) {
    std::vector<double> xs;
    if (rng.uniform() < 0.5) {
      xs = linspace(-0.9, 0.9, grid_points);
    } else {
      while (xs.size() < grid_points) {
        xs.clear();
        for (std::size_t i = 0; i < grid_points; ++i) xs.push_back(rng.uniform(-0.95, 0.95));
        std::sort(xs.begin(), xs.end());
        xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
      }
    }
    const double qa = rng.uniform(0.2, 2.0);
    const double qb = rng.uniform(-1.0, 1.0);
    const double qc = rng.uniform(-1.0, 1.0);
    const double ea = rng.uniform(0.0, 0.5);
    const double ek = rng.uniform(-2.0, 2.0);
    auto base = [=](double x) { return (qa * x + qb) * x + qc + ea * std::exp(ek * x); };
    double max_gap = 0.0;
    for (std::size_t i = 1; i < xs.size(); ++i) max_gap = std::max(max_gap, xs[i] - xs[i - 1]);

    const std::size_t kind = c % 5;
    if (kind == 0) {
      cases.push_back({"convex", GridFunction::sample(base, xs, domain), PhiSpec::zero(), true});
    } else if (kind == 1) {
      const double delta = rng.uniform(0.01, 0.2);
      const auto noise = CatalogFunction::make(
          "noise_perturbed",
          {{"a", 0.0}, {"delta", delta}, {"seed", static_cast<double>(rng.bits() >> 12)}});
      cases.push_back({"convex+noise",
                       GridFunction::sample([&](double x) { return base(x) + noise(x); }, xs, domain),
                       PhiSpec::power(2.0 * delta, 0.0), true});
    } else if (kind == 2) {
      const double amp = rng.uniform(0.1, 1.0);
      const double p = rng.uniform(0.2, 1.0);
      const double z = rng.uniform() < 0.5 ? xs[rng.index(1, xs.size() - 2)] : rng.uniform(-0.9, 0.9);
      auto f = [&](double x) { return base(x) - amp * std::pow(std::abs(x - z), p); };
      cases.push_back({"convex+holder", GridFunction::sample(f, xs, domain),
                       PhiSpec::power(amp, p), true});
    } else if (kind == 3) {
      const double eps = rng.uniform(0.05, 0.5);
      const double kink = eps + rng.uniform(1.0, 3.0);
      const double z = xs[rng.index(1, xs.size() - 2)];
      auto f = [&](double x) { return base(x) - kink * std::abs(x - z); };
      cases.push_back({"concave-kink", GridFunction::sample(f, xs, domain),
                       PhiSpec::power(eps, 1.0), false});
    } else {
      const PhiSpec phi = PhiSpec::power(rng.uniform(0.01, 0.2), rng.uniform(0.0, 1.0));
      const std::size_t k = rng.index(1, xs.size() - 2);
      const double height = 3.0 * phi(max_gap) + rng.uniform(0.1, 0.5);
      std::vector<double> fs;
      for (double x : xs) fs.push_back(base(x));
      fs[k] += height;
      cases.push_back({"spike", GridFunction(xs, std::move(fs), domain), phi, false});
    }
  }
  return cases;
}

}  // namespace phiconv
