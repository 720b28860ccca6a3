#pragma once

// Textual grammar for moduli:
//   power:EPS,P
//   mixture:P1=W1;P2=W2;...
//   combo:C1*(SPEC1)+C2*(SPEC2)+...

#include <string>
#include <string_view>
#include <vector>

#include "phiconv/modulus.hpp"
#include "phiconv/numeric_text.hpp"

namespace phiconv {

inline PhiSpec parse_phi(std::string_view text) {
  const std::string_view s = trim(text);
  const auto colon = s.find(':');
  if (colon == std::string_view::npos) {
    throw InputError("modulus '" + std::string(s) +
                     "' lacks a kind prefix (power:, mixture:, combo:)");
  }
  const std::string_view kind = s.substr(0, colon);
  const std::string_view body = s.substr(colon + 1);

  if (kind == "power") {
    const auto parts = detail::split(body, ',');
    if (parts.size() != 2) throw InputError("power modulus expects 'power:EPS,P'");
    return PhiSpec::power(parse_double(parts[0], "epsilon"),
                          parse_double(parts[1], "exponent"));
  }

  if (kind == "mixture") {
    std::vector<Atom> atoms;
    for (std::string_view item : detail::split(body, ';')) {
      if (trim(item).empty()) continue;  // tolerate a trailing ';'
      const auto eq = item.find('=');
      if (eq == std::string_view::npos) {
        throw InputError("mixture atom '" + std::string(item) + "' expects P=W");
      }
      atoms.push_back({parse_double(item.substr(0, eq), "exponent"),
                       parse_double(item.substr(eq + 1), "weight")});
    }
    return PhiSpec::mixture(DiscreteMeasure(std::move(atoms)));
  }

  if (kind == "combo") {
    std::vector<CombinationTerm> terms;
    std::size_t i = 0;
    while (i < body.size()) {
      const auto star = body.find('*', i);
      if (star == std::string_view::npos || star + 1 >= body.size() ||
          body[star + 1] != '(') {
        throw InputError("combination term expects C*(SPEC)");
      }
      const double c = parse_double(body.substr(i, star - i), "coefficient");
      int depth = 0;
      std::size_t close = star + 1;
      for (; close < body.size(); ++close) {
        if (body[close] == '(') ++depth;
        if (body[close] == ')' && --depth == 0) break;
      }
      if (close >= body.size()) throw InputError("unbalanced parentheses in combination");
      terms.push_back({c, parse_phi(body.substr(star + 2, close - star - 2))});
      i = close + 1;
      if (i < body.size()) {
        if (body[i] != '+') throw InputError("combination terms must be joined by '+'");
        ++i;
        if (i == body.size()) throw InputError("dangling '+' in combination");
      }
    }
    return PhiSpec::combination(std::move(terms));
  }

  throw InputError("unknown modulus kind '" + std::string(kind) + "'");
}

inline std::string format_phi(const PhiSpec& spec) {
  return std::visit(
      [](const auto& m) -> std::string {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, PowerModulus>) {
          return "power:" + format_double(m.epsilon) + "," + format_double(m.exponent);
        } else if constexpr (std::is_same_v<T, MixtureModulus>) {
          std::string out = "mixture:";
          bool first = true;
          for (const Atom& a : m.measure.atoms()) {
            if (!first) out += ';';
            first = false;
            out += format_double(a.exponent) + "=" + format_double(a.weight);
          }
          return out;
        } else {
          std::string out = "combo:";
          bool first = true;
          for (const auto& t : m.terms) {
            if (!first) out += '+';
            first = false;
            out += format_double(t.coefficient) + "*(" + format_phi(t.spec) + ")";
          }
          return out;
        }
      },
      spec.variant());
}

}  // namespace phiconv
