#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "phiconv/modulus.hpp"
#include "phiconv/numeric_text.hpp"

namespace phiconv {

/// A real function sampled on a strictly increasing grid inside an open
/// interval.
class GridFunction {
 public:
  GridFunction(std::vector<double> xs, std::vector<double> fs,
               DomainSpec domain = DomainSpec::real_line())
      : xs_(std::move(xs)), fs_(std::move(fs)), domain_(domain) {
    if (xs_.size() != fs_.size()) throw InputError("grid x and f lengths differ");
    if (xs_.size() < 3) throw InputError("grid needs at least 3 points");
    for (std::size_t i = 0; i < xs_.size(); ++i) {
      if (!std::isfinite(xs_[i]) || !std::isfinite(fs_[i])) {
        throw InputError("grid values must be finite");
      }
      if (!domain_.contains(xs_[i])) {
        throw InputError("grid point " + format_double(xs_[i]) +
                         " lies outside the open domain");
      }
      if (i > 0 && !(xs_[i] > xs_[i - 1])) {
        throw InputError("grid abscissae must be strictly increasing");
      }
    }
    detect_uniform();
  }

  template <class F>
  static GridFunction sample(const F& f, std::vector<double> xs,
                             DomainSpec domain = DomainSpec::real_line()) {
    std::vector<double> fs;
    fs.reserve(xs.size());
    for (double x : xs) fs.push_back(static_cast<double>(f(x)));
    return GridFunction(std::move(xs), std::move(fs), domain);
  }

  [[nodiscard]] std::span<const double> xs() const { return xs_; }
  [[nodiscard]] std::span<const double> fs() const { return fs_; }
  [[nodiscard]] double x(std::size_t i) const { return xs_[i]; }
  [[nodiscard]] double f(std::size_t i) const { return fs_[i]; }
  [[nodiscard]] std::size_t size() const { return xs_.size(); }
  [[nodiscard]] const DomainSpec& domain() const { return domain_; }

  /// True iff consecutive gaps match the mean step to within 8 ulps of the
  /// grid's magnitude.
  [[nodiscard]] bool uniform() const { return uniform_; }
  [[nodiscard]] double step() const { return step_; }

 private:
  void detect_uniform() {
    const std::size_t n = xs_.size();
    step_ = (xs_.back() - xs_.front()) / static_cast<double>(n - 1);
    const double magnitude =
        std::max({std::abs(xs_.front()), std::abs(xs_.back()), step_});
    const double limit = 8.0 * std::numeric_limits<double>::epsilon() * magnitude;
    uniform_ = true;
    for (std::size_t i = 1; i < n; ++i) {
      if (std::abs((xs_[i] - xs_[i - 1]) - step_) > limit) {
        uniform_ = false;
        break;
      }
    }
  }

  std::vector<double> xs_;
  std::vector<double> fs_;
  DomainSpec domain_;
  bool uniform_ = false;
  double step_ = 0.0;
};

/// n points lo, lo + h, ..., hi with h = (hi - lo)/(n - 1), each computed as
/// lo + i*h.
inline std::vector<double> linspace(double lo, double hi, std::size_t n) {
  if (n < 2) throw InputError("linspace needs at least 2 points");
  std::vector<double> out(n);
  const double h = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) out[i] = lo + static_cast<double>(i) * h;
  out.back() = hi;
  return out;
}

}  // namespace phiconv
