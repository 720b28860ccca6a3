#pragma once

// Structured output for reports: passed, checked, worst_slack, witnesses[].
// Requires nlohmann/json.

#include <cmath>
#include <cstddef>

#include <nlohmann/json.hpp>

#include "phiconv/phi_text.hpp"
#include "phiconv/report.hpp"
#include "phiconv/transfer.hpp"

namespace phiconv {

namespace detail {

/// JSON has no infinities; they are written as the strings "inf"/"-inf".
inline nlohmann::json json_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

}  // namespace detail

inline nlohmann::json to_json(const ViolationReport& r) {
  nlohmann::json w = nlohmann::json::array();
  for (const Witness& wit : r.witnesses) {
    nlohmann::json pts = nlohmann::json::array();
    for (double p : wit.points) pts.push_back(detail::json_number(p));
    w.push_back({{"points", pts},
                 {"lhs", detail::json_number(wit.lhs)},
                 {"rhs", detail::json_number(wit.rhs)},
                 {"slack", detail::json_number(wit.slack)}});
  }
  return {{"passed", r.passed},
          {"checked", r.checked_count},
          {"violations", r.violation_count},
          {"indeterminate", r.indeterminate_count},
          {"worst_slack", detail::json_number(r.worst_slack)},
          {"witnesses", w}};
}

inline nlohmann::json to_json(const TransferResult& t) {
  nlohmann::json j{{"gamma", detail::json_number(t.gamma)},
                   {"factor", detail::json_number(t.factor)},
                   {"applicable", t.applicable}};
  j["effective_phi"] = t.effective_spec ? nlohmann::json(format_phi(*t.effective_spec))
                                        : nlohmann::json(nullptr);
  return j;
}

inline nlohmann::json to_json(const TransferReport& r) {
  nlohmann::json j{{"status", to_string(r.status)},
                   {"passed", r.passed()},
                   {"transfer", to_json(r.transfer)},
                   {"midconvexity", to_json(r.midconvexity)}};
  j["convexity"] = r.convexity ? to_json(*r.convexity) : nlohmann::json(nullptr);
  return j;
}

inline nlohmann::json to_json(const EquivalenceReport& r) {
  return {{"passed", r.consistent()},
          {"consistent", r.consistent()},
          {"slopes", to_json(r.slopes)},
          {"support", to_json(r.support)},
          {"representation", to_json(r.representation)}};
}

}  // namespace phiconv
