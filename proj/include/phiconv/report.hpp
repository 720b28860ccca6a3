#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace phiconv {

/// Raised for malformed or out-of-contract inputs (bad grammar, negative
/// arguments, degenerate grids). The CLI maps it to exit code 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Slack allowance for inequality checks: a check `lhs <= rhs` is violated
/// when `lhs - rhs > absolute + relative * max(|lhs|, |rhs|)`.
struct Tolerance {
  double absolute = 1e-9;
  double relative = 1e-9;
  /// Reports keep at most this many witnesses (the worst ones); the total
  /// number of violations is always counted.
  std::size_t max_witnesses = 64;

  [[nodiscard]] double allowance(double lhs, double rhs) const {
    return absolute + relative * std::max(std::abs(lhs), std::abs(rhs));
  }
};

struct Witness {
  std::vector<double> points;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // lhs - rhs
};

/// Outcome of an inequality scan.
struct ViolationReport {
  bool passed = true;
  std::size_t checked_count = 0;
  std::size_t violation_count = 0;
  /// Comparisons whose verdict lies inside a certified enclosure's width.
  std::size_t indeterminate_count = 0;
  /// Sorted by descending slack, then lexicographically by points.
  std::vector<Witness> witnesses;
  double worst_slack = -std::numeric_limits<double>::infinity();
};

namespace detail {

inline bool witness_order(const Witness& a, const Witness& b) {
  if (a.slack != b.slack) return a.slack > b.slack;
  return std::lexicographical_compare(a.points.begin(), a.points.end(),
                                      b.points.begin(), b.points.end());
}

}  // namespace detail

/// Accumulates checks into a ViolationReport with a bounded witness list.
class ReportBuilder {
 public:
  explicit ReportBuilder(Tolerance tol = {}) : tol_(tol) {}

  [[nodiscard]] const Tolerance& tolerance() const { return tol_; }

  /// Records `lhs <= rhs` at `points`; returns true when it holds within
  /// tolerance.
  bool check(std::vector<double> points, double lhs, double rhs) {
    return check_with_slack(std::move(points), lhs, rhs, lhs - rhs,
                            tol_.allowance(lhs, rhs));
  }

  /// Variant for callers that compute slack and allowance themselves.
  bool check_with_slack(std::vector<double> points, double lhs, double rhs,
                        double slack, double allowance) {
    ++report_.checked_count;
    if (slack > report_.worst_slack || std::isnan(slack)) {
      report_.worst_slack = std::isnan(slack)
                                ? std::numeric_limits<double>::infinity()
                                : slack;
    }
    if (slack > allowance || std::isnan(slack)) {
      ++report_.violation_count;
      push_witness({std::move(points), lhs, rhs, slack});
      return false;
    }
    return true;
  }

  void count_checked(std::size_t n) { report_.checked_count += n; }
  void mark_indeterminate() { ++report_.indeterminate_count; }

  ViolationReport finish() && {
    std::sort(report_.witnesses.begin(), report_.witnesses.end(),
              detail::witness_order);
    report_.passed = report_.violation_count == 0;
    return std::move(report_);
  }

 private:
  void push_witness(Witness w) {
    auto& ws = report_.witnesses;
    if (tol_.max_witnesses == 0) return;
    if (ws.size() < tol_.max_witnesses) {
      ws.push_back(std::move(w));
      std::push_heap(ws.begin(), ws.end(), detail::witness_order);
      return;
    }
    // Heap front holds the least severe retained witness.
    if (detail::witness_order(w, ws.front())) {
      std::pop_heap(ws.begin(), ws.end(), detail::witness_order);
      ws.back() = std::move(w);
      std::push_heap(ws.begin(), ws.end(), detail::witness_order);
    }
  }

  Tolerance tol_;
  ViolationReport report_;
};

}  // namespace phiconv
