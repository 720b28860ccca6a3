#pragma once

// The `phiconv` command line. Exit codes: 0 = evaluation done / all checks
// passed, 1 = a violation was found, 2 = input or configuration error.

#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "phiconv/phiconv.hpp"
#include "phiconv/report_json.hpp"

namespace phiconv::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitInputError = 2;

struct CommandConfig {
  std::string phi;
  std::string lo = "-inf";
  std::string hi = "inf";
  std::string alpha;
  std::string input;
  std::string output;
  std::string mode = "both";
  std::string catalog;
  std::vector<std::string> params;
  double u = 1.0;
  std::size_t points = 1025;
  int depth = kDefaultTakagiDepth;
  int resolution = 10;
  int iterations = 30;
  double tol_abs = 1e-9;
  double tol_rel = 1e-9;
  std::size_t max_witnesses = 20;
  std::size_t fuzz = 0;
  std::uint64_t seed = 1;
  std::string sweep_lo;
  std::string sweep_hi;
};

namespace detail {

inline DomainSpec domain_of(const CommandConfig& c) {
  return DomainSpec(parse_double(c.lo, "--lo"), parse_double(c.hi, "--hi"));
}

inline Tolerance tolerance_of(const CommandConfig& c) {
  if (!(c.tol_abs >= 0.0) || !(c.tol_rel >= 0.0)) throw InputError("tolerances must be >= 0");
  return {c.tol_abs, c.tol_rel, c.max_witnesses};
}

inline GridFunction load_grid(const CommandConfig& c) {
  if (c.input.empty()) throw InputError("--input is required");
  std::ifstream in(c.input);
  if (!in) throw InputError("cannot open input file '" + c.input + "'");
  return read_grid_csv(in, domain_of(c));
}

inline CatalogParams parse_params(const std::vector<std::string>& items) {
  CatalogParams out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw InputError("--param expects NAME=VALUE, got '" + item + "'");
    out[item.substr(0, eq)] = parse_double(std::string_view(item).substr(eq + 1), "--param value");
  }
  return out;
}

inline void print_json(std::ostream& out, const nlohmann::json& j) { out << j.dump(2) << '\n'; }

inline int cmd_takagi(const CommandConfig& c, std::ostream& out) {
  const PhiSpec phi = parse_phi(c.phi);
  write_csv(out, takagi_table(phi, c.u, c.points, c.depth));
  return kExitOk;
}

inline int cmd_gamma(const CommandConfig& c, std::ostream& out) {
  const PhiSpec phi = parse_phi(c.phi);
  const double alpha = parse_double(c.alpha.empty() ? "inf" : c.alpha, "--alpha");
  const GammaEstimate g = gamma_phi(phi, alpha);
  const TransferResult t = effective_modulus(phi, alpha);
  out << "gamma=" << format_double(g.value) << '\n'
      << "factor=" << format_double(t.factor) << '\n'
      << "applicable=" << (t.applicable ? "true" : "false") << '\n'
      << "sampled=" << (g.sampled ? "true" : "false") << '\n';
  return kExitOk;
}

inline int cmd_check_fuzz(const CommandConfig& c, std::ostream& out) {
  const Tolerance tol = tolerance_of(c);
  std::size_t consistent = 0;
  std::size_t convex = 0;
  nlohmann::json failures = nlohmann::json::array();
  const auto cases = generate_fuzz_cases(c.fuzz, c.seed);
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const EquivalenceReport r = check_thm2_equivalence(cases[i].f, cases[i].phi, tol);
    if (r.slopes.passed) ++convex;
    if (r.consistent()) {
      ++consistent;
    } else {
      failures.push_back({{"case", i}, {"label", cases[i].label}, {"phi", format_phi(cases[i].phi)}});
    }
  }
  const bool ok = consistent == cases.size();
  print_json(out, {{"passed", ok},
                   {"checked", cases.size()},
                   {"consistent", consistent},
                   {"convex", convex},
                   {"seed", c.seed},
                   {"inconsistent_cases", failures}});
  return ok ? kExitOk : kExitViolation;
}

inline int cmd_check(const CommandConfig& c, std::ostream& out) {
  if (c.fuzz > 0) return cmd_check_fuzz(c, out);
  const PhiSpec phi = parse_phi(c.phi);
  const GridFunction f = load_grid(c);
  const Tolerance tol = tolerance_of(c);
  if (c.mode == "mid") {
    const auto r = check_midconvex(f, phi, tol);
    print_json(out, to_json(r));
    return r.passed ? kExitOk : kExitViolation;
  }
  if (c.mode == "slopes") {
    const auto r = check_convex_slopes(f, phi, tol);
    print_json(out, to_json(r));
    return r.passed ? kExitOk : kExitViolation;
  }
  if (c.mode == "equivalence") {
    const auto r = check_thm2_equivalence(f, phi, tol);
    print_json(out, to_json(r));
    return r.consistent() && r.slopes.passed ? kExitOk : kExitViolation;
  }
  // both
  if (!f.uniform()) {
    throw InputError("--mode both includes the midconvexity check, which needs a uniform grid");
  }
  const auto mid = check_midconvex(f, phi, tol);
  const auto conv = check_convex_slopes(f, phi, tol);
  const bool ok = mid.passed && conv.passed;
  print_json(out, {{"passed", ok},
                   {"checked", mid.checked_count + conv.checked_count},
                   {"worst_slack", phiconv::detail::json_number(std::max(mid.worst_slack, conv.worst_slack))},
                   {"midconvexity", to_json(mid)},
                   {"convexity", to_json(conv)}});
  return ok ? kExitOk : kExitViolation;
}

inline int cmd_support(const CommandConfig& c, std::ostream& out) {
  const PhiSpec phi = parse_phi(c.phi);
  const GridFunction f = load_grid(c);
  write_csv(out, support_table(f, support_slopes(f, phi), phi));
  return kExitOk;
}

inline int cmd_transfer(const CommandConfig& c, std::ostream& out) {
  const PhiSpec phi = parse_phi(c.phi);
  const Tolerance tol = tolerance_of(c);
  if (!c.input.empty() && !c.catalog.empty()) {
    throw InputError("--input and --catalog are mutually exclusive");
  }
  if (!c.input.empty()) {
    const GridFunction f = load_grid(c);
    const TransferReport r = transfer_pipeline(f, phi, tol);
    print_json(out, to_json(r));
    return r.status == TransferStatus::midconvexity_failed ||
                   r.status == TransferStatus::convexity_failed
               ? kExitViolation
               : kExitOk;
  }
  if (!c.catalog.empty()) {
    const DomainSpec domain = domain_of(c);
    if (c.sweep_lo.empty() || c.sweep_hi.empty()) {
      throw InputError("--catalog needs --sweep-lo and --sweep-hi inside the domain");
    }
    const double lo = parse_double(c.sweep_lo, "--sweep-lo");
    const double hi = parse_double(c.sweep_hi, "--sweep-hi");
    if (!domain.contains(lo) || !domain.contains(hi)) {
      throw InputError("sweep interval must lie inside the open domain");
    }
    const auto f = CatalogFunction::make(c.catalog, parse_params(c.params),
                                         c.catalog == "neg_phi_dist" ? std::optional(phi) : std::nullopt);
    const TransferReport r = transfer_pipeline(f, phi, lo, hi, domain, tol);
    print_json(out, to_json(r));
    return r.status == TransferStatus::midconvexity_failed ||
                   r.status == TransferStatus::convexity_failed
               ? kExitViolation
               : kExitOk;
  }
  const double alpha =
      c.alpha.empty() ? domain_of(c).alpha() : parse_double(c.alpha, "--alpha");
  const TransferResult t = effective_modulus(phi, alpha);
  out << "gamma=" << format_double(t.gamma) << '\n'
      << "factor=" << format_double(t.factor) << '\n'
      << "applicable=" << (t.applicable ? "true" : "false") << '\n'
      << "effective_phi=" << (t.effective_spec ? format_phi(*t.effective_spec) : "none") << '\n';
  return kExitOk;
}

inline int cmd_derham(const CommandConfig& c, std::ostream& out) {
  const PhiSpec phi = parse_phi(c.phi);
  const PeriodicTable table = derham_iterate(phi, c.u, c.resolution, c.iterations);
  CsvTable csv{{"t", "value", "T_lower", "T_upper"}, {}};
  for (std::size_t k = 0; k < table.size(); ++k) {
    const Enclosure e = takagi_phi(phi, table.t(k), c.u, c.depth);
    csv.rows.push_back({table.t(k), table[k], e.lower, e.upper});
  }
  write_csv(out, csv);
  return kExitOk;
}

}  // namespace detail

/// Parses argv and runs one subcommand, writing results to `out` (or to
/// --output) and diagnostics to `err`.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Approximate convexity toolkit: Takagi-type envelopes, doubling ratios, "
               "grid convexity checks and midconvex-to-convex transfer"};
  app.name("phiconv");
  app.require_subcommand(1);
  CommandConfig c;

  auto add_phi = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--phi", c.phi,
                                "error modulus: power:EPS,P | mixture:P1=W1;... | combo:C*(SPEC)+...");
    if (required) opt->required();
  };
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("-o,--output", c.output, "output file (default: standard output)");
  };
  auto add_domain = [&](CLI::App* sub) {
    sub->add_option("--lo", c.lo, "open domain lower end (default -inf)");
    sub->add_option("--hi", c.hi, "open domain upper end (default inf)");
  };
  auto add_tol = [&](CLI::App* sub) {
    sub->add_option("--tol-abs", c.tol_abs, "absolute slack tolerance")->capture_default_str();
    sub->add_option("--tol-rel", c.tol_rel, "relative slack tolerance")->capture_default_str();
    sub->add_option("--max-witnesses", c.max_witnesses, "witnesses kept per report")
        ->capture_default_str();
  };

  auto* takagi = app.add_subcommand("takagi", "tabulate the Takagi-type envelope and error term");
  add_phi(takagi, true);
  takagi->add_option("--u", c.u, "distance argument u >= 0")->capture_default_str();
  takagi->add_option("--points", c.points, "uniform t points on [0,1]")->capture_default_str();
  takagi->add_option("--depth", c.depth, "series truncation depth")->capture_default_str();
  add_output(takagi);

  auto* gamma = app.add_subcommand("gamma", "doubling ratio and transfer factor");
  add_phi(gamma, true);
  gamma->add_option("--alpha", c.alpha, "sup of D^+ (number or inf, default inf)");
  add_output(gamma);

  auto* check = app.add_subcommand("check", "grid midconvexity / convexity checks");
  add_phi(check, false);
  check->add_option("--input", c.input, "function CSV with header x,f");
  check->add_option("--mode", c.mode, "mid | slopes | both | equivalence")
      ->check(CLI::IsMember({"mid", "slopes", "both", "equivalence"}))
      ->capture_default_str();
  check->add_option("--fuzz", c.fuzz, "run the three-way equivalence on N generated cases");
  check->add_option("--seed", c.seed, "seed for --fuzz")->capture_default_str();
  add_domain(check);
  add_tol(check);
  add_output(check);

  auto* support = app.add_subcommand("support", "support slopes and sup-reconstruction error");
  add_phi(support, true);
  support->add_option("--input", c.input, "function CSV with header x,f")->required();
  add_domain(support);
  add_output(support);

  auto* transfer = app.add_subcommand("transfer", "effective modulus and transfer pipeline");
  add_phi(transfer, true);
  transfer->add_option("--alpha", c.alpha, "sup of D^+ (default: from the domain)");
  transfer->add_option("--input", c.input, "function CSV with header x,f (uniform grid)");
  transfer->add_option("--catalog", c.catalog, "catalog function name")
      ->check(CLI::IsMember(CatalogFunction::names()));
  transfer->add_option("--param", c.params, "catalog parameter NAME=VALUE (repeatable)");
  transfer->add_option("--sweep-lo", c.sweep_lo, "catalog sweep interval lower end");
  transfer->add_option("--sweep-hi", c.sweep_hi, "catalog sweep interval upper end");
  add_domain(transfer);
  add_tol(transfer);
  add_output(transfer);

  auto* derham = app.add_subcommand("derham", "de Rham fixed-point iterate on a dyadic grid");
  add_phi(derham, true);
  derham->add_option("--u", c.u, "distance argument u >= 0")->capture_default_str();
  derham->add_option("--resolution", c.resolution, "grid has 2^m points")->capture_default_str();
  derham->add_option("--iterations", c.iterations, "number of iterations k")->capture_default_str();
  derham->add_option("--depth", c.depth, "series depth of the comparison columns")
      ->capture_default_str();
  add_output(derham);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }

  std::ofstream file;
  std::ostringstream buffer;
  try {
    int code = kExitOk;
    if (*takagi) {
      code = detail::cmd_takagi(c, buffer);
    } else if (*gamma) {
      code = detail::cmd_gamma(c, buffer);
    } else if (*check) {
      if (c.fuzz == 0 && c.phi.empty()) throw InputError("--phi is required");
      code = detail::cmd_check(c, buffer);
    } else if (*support) {
      code = detail::cmd_support(c, buffer);
    } else if (*transfer) {
      code = detail::cmd_transfer(c, buffer);
    } else if (*derham) {
      code = detail::cmd_derham(c, buffer);
    }
    if (c.output.empty()) {
      out << buffer.str();
    } else {
      file.open(c.output, std::ios::binary);
      if (!file) throw InputError("cannot open output file '" + c.output + "'");
      file << buffer.str();
    }
    return code;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
}

}  // namespace phiconv::cli
