#pragma once

// Named analytic test functions used by the checks and the CLI.

#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "phiconv/modulus.hpp"
#include "phiconv/takagi.hpp"

namespace phiconv {

using CatalogParams = std::map<std::string, double>;

enum class CatalogKind {
  quadratic,         // a x^2 + b x + c
  abs_power,         // c |x - z|^p
  neg_phi_dist,      // -φ(|x - z|)
  takagi_perturbed,  // a x^2 + b x + c + eps T_p(x)
  noise_perturbed,   // a x^2 + b x + c + delta * noise(x), |noise| <= 1
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace detail

class CatalogFunction {
 public:
  static std::vector<std::string> names() {
    return {"quadratic", "abs_power", "neg_phi_dist", "takagi_perturbed", "noise_perturbed"};
  }

  /// Builds a catalog entry. Missing parameters take defaults (a=1, b=c=0,
  /// z=0, p=1, eps=0.1, delta=0.01, seed=0, depth=64); unknown parameter
  /// names are rejected. `neg_phi_dist` requires `phi`.
  static CatalogFunction make(const std::string& name, const CatalogParams& params = {},
                              std::optional<PhiSpec> phi = std::nullopt) {
    CatalogFunction f;
    std::set<std::string> allowed;
    if (name == "quadratic") {
      f.kind_ = CatalogKind::quadratic;
      allowed = {"a", "b", "c"};
    } else if (name == "abs_power") {
      f.kind_ = CatalogKind::abs_power;
      allowed = {"c", "z", "p"};
    } else if (name == "neg_phi_dist") {
      f.kind_ = CatalogKind::neg_phi_dist;
      allowed = {"z"};
      if (!phi) throw InputError("neg_phi_dist needs a modulus");
    } else if (name == "takagi_perturbed") {
      f.kind_ = CatalogKind::takagi_perturbed;
      allowed = {"a", "b", "c", "eps", "p", "depth"};
    } else if (name == "noise_perturbed") {
      f.kind_ = CatalogKind::noise_perturbed;
      allowed = {"a", "b", "c", "delta", "seed"};
    } else {
      throw InputError("unknown catalog function '" + name + "'");
    }
    for (const auto& [key, value] : params) {
      if (!allowed.contains(key)) {
        throw InputError("parameter '" + key + "' does not apply to " + name);
      }
      if (!std::isfinite(value)) throw InputError("parameter '" + key + "' must be finite");
    }
    auto get = [&](const char* key, double fallback) {
      const auto it = params.find(key);
      return it == params.end() ? fallback : it->second;
    };
    f.a_ = get("a", 1.0);
    f.b_ = get("b", 0.0);
    f.c_ = get("c", f.kind_ == CatalogKind::abs_power ? 1.0 : 0.0);
    f.z_ = get("z", 0.0);
    f.p_ = get("p", 1.0);
    f.eps_ = get("eps", 0.1);
    f.delta_ = get("delta", 0.01);
    f.seed_ = static_cast<std::uint64_t>(get("seed", 0.0));
    f.depth_ = static_cast<int>(get("depth", 64.0));
    f.phi_ = std::move(phi);

    if (f.kind_ == CatalogKind::abs_power && !(f.p_ > 0.0)) {
      throw InputError("abs_power needs p > 0");
    }
    if (f.kind_ == CatalogKind::takagi_perturbed) {
      if (!(f.p_ >= 0.0 && f.p_ <= 1.0)) throw InputError("takagi_perturbed needs p in [0,1]");
      if (!(f.eps_ >= 0.0)) throw InputError("takagi_perturbed needs eps >= 0");
      if (f.depth_ < 1) throw InputError("takagi_perturbed needs depth >= 1");
    }
    if (f.kind_ == CatalogKind::noise_perturbed && !(f.delta_ >= 0.0)) {
      throw InputError("noise_perturbed needs delta >= 0");
    }
    return f;
  }

  [[nodiscard]] CatalogKind kind() const { return kind_; }

  double operator()(double x) const {
    switch (kind_) {
      case CatalogKind::quadratic:
        return base(x);
      case CatalogKind::abs_power:
        return c_ * std::pow(std::abs(x - z_), p_);
      case CatalogKind::neg_phi_dist:
        return -(*phi_)(std::abs(x - z_));
      case CatalogKind::takagi_perturbed:
        return base(x) + eps_ * takagi_p(p_, x, depth_).midpoint();
      case CatalogKind::noise_perturbed:
        return base(x) + delta_ * noise(x);
    }
    return 0.0;
  }

 private:
  CatalogFunction() = default;

  [[nodiscard]] double base(double x) const { return (a_ * x + b_) * x + c_; }

  /// Deterministic hash of x's bit pattern mapped into [-1, 1].
  [[nodiscard]] double noise(double x) const {
    const std::uint64_t h = detail::splitmix64(std::bit_cast<std::uint64_t>(x) ^ seed_);
    return std::ldexp(static_cast<double>(h >> 11), -52) - 1.0;
  }

  CatalogKind kind_ = CatalogKind::quadratic;
  double a_ = 1.0, b_ = 0.0, c_ = 0.0, z_ = 0.0, p_ = 1.0;
  double eps_ = 0.1, delta_ = 0.01;
  std::uint64_t seed_ = 0;
  int depth_ = 64;
  std::optional<PhiSpec> phi_;
};

/// Evaluates catalog entry `name` at x.
inline double catalog_eval(const std::string& name, const CatalogParams& params, double x,
                           std::optional<PhiSpec> phi = std::nullopt) {
  return CatalogFunction::make(name, params, std::move(phi))(x);
}

}  // namespace phiconv
