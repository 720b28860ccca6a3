#pragma once

// Plain numeric CSV: one header line, comma separated, LF endings, numbers in
// shortest round-trip form.

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "phiconv/convexity.hpp"
#include "phiconv/grid.hpp"
#include "phiconv/numeric_text.hpp"
#include "phiconv/takagi.hpp"

namespace phiconv {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

inline CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw InputError("CSV input is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  for (auto field : detail::split(line, ',')) table.header.emplace_back(trim(field));
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const auto fields = detail::split(line, ',');
    if (fields.size() != table.header.size()) {
      throw InputError("CSV line " + std::to_string(line_no) + " has " +
                       std::to_string(fields.size()) + " fields, expected " +
                       std::to_string(table.header.size()));
    }
    std::vector<double> row;
    row.reserve(fields.size());
    for (auto f : fields) row.push_back(parse_double(f, "CSV value on line " + std::to_string(line_no)));
    table.rows.push_back(std::move(row));
  }
  return table;
}

inline void write_csv(std::ostream& out, const CsvTable& table) {
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) out << ',';
    out << table.header[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << format_double(row[i]);
    }
    out << '\n';
  }
}

/// Reads a function table with header exactly `x,f`.
inline GridFunction read_grid_csv(std::istream& in, DomainSpec domain = DomainSpec::real_line()) {
  CsvTable t = read_csv(in);
  if (t.header != std::vector<std::string>{"x", "f"}) {
    throw InputError("function CSV header must be 'x,f'");
  }
  std::vector<double> xs, fs;
  for (const auto& row : t.rows) {
    xs.push_back(row[0]);
    fs.push_back(row[1]);
  }
  return GridFunction(std::move(xs), std::move(fs), domain);
}

inline void write_grid_csv(std::ostream& out, const GridFunction& g) {
  CsvTable t{{"x", "f"}, {}};
  for (std::size_t i = 0; i < g.size(); ++i) t.rows.push_back({g.x(i), g.f(i)});
  write_csv(out, t);
}

/// Rows t, T_lower, T_upper, tau, ratio_upper_bound on t = k/(points-1).
/// ratio_upper_bound is T_upper / tau (nan where tau = 0); whenever γ < 2 it
/// stays below 2/(2-γ).
template <Modulus M>
CsvTable takagi_table(const M& phi, double u, std::size_t points, int depth) {
  if (points < 2) throw InputError("takagi table needs at least 2 points");
  CsvTable t{{"t", "T_lower", "T_upper", "tau", "ratio_upper_bound"}, {}};
  t.rows.reserve(points);
  for (std::size_t k = 0; k < points; ++k) {
    const double s = static_cast<double>(k) / static_cast<double>(points - 1);
    const Enclosure e = takagi_phi(phi, s, u, depth);
    const double tau = tau_phi(phi, s, u);
    const double ratio = tau > 0.0 ? e.upper / tau : std::numeric_limits<double>::quiet_NaN();
    t.rows.push_back({s, e.lower, e.upper, tau, ratio});
  }
  return t;
}

/// Rows u, a, b, recon_err with recon_err = reconstruction(u) - f(u).
template <Modulus M>
CsvTable support_table(const GridFunction& f, const SupportData& sd, const M& phi) {
  CsvTable t{{"u", "a", "b", "recon_err"}, {}};
  for (std::size_t i = 0; i < f.size(); ++i) {
    t.rows.push_back({sd.us[i], sd.a[i], sd.b[i], reconstruct_sup(sd, phi, f.x(i)) - f.f(i)});
  }
  return t;
}

}  // namespace phiconv
