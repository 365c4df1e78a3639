#include "rotcalc/json_io.hpp"

#include <cctype>
#include <string>
#include <vector>

#include "rotcalc/errors.hpp"

namespace rotcalc {

nlohmann::json to_json(const Expression& e) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : e.num().terms()) {
    nlohmann::json factors = nlohmann::json::array();
    for (int v = 0; v < kNumVars; ++v) {
      if (t.mono.exp[v] != 0) factors.push_back({var_symbol(v).name(), int(t.mono.exp[v])});
    }
    terms.push_back({{"coeff", t.coeff.str()}, {"factors", std::move(factors)}});
  }
  nlohmann::json den = nlohmann::json::array();
  for (int p = 0; p < kNumPairs; ++p) {
    if (e.den().mult[p] == 0) continue;
    auto [i, j] = pair_of(p);
    den.push_back({i, j, int(e.den().mult[p])});
  }
  return {{"terms", std::move(terms)}, {"denominator", std::move(den)}};
}

GeneratorSymbol parse_generator(std::string_view name) {
  auto fail = [&] { return ParseError("bad generator name: " + std::string(name)); };
  if (name.size() < 2) throw fail();
  auto digit = [&](std::size_t pos) {
    if (pos >= name.size() || !std::isdigit(static_cast<unsigned char>(name[pos]))) throw fail();
    return name[pos] - '0';
  };
  GeneratorSymbol g;
  switch (name[0]) {
    case 'u':
      if (name.size() != 2) throw fail();
      g = GeneratorSymbol::u(digit(1));
      break;
    case 's':
      if (name.size() != 2) throw fail();
      g = GeneratorSymbol::s(digit(1));
      break;
    case 'r':
      if (name.size() != 3) throw fail();
      g = GeneratorSymbol::r(digit(1), digit(2));
      break;
    case 't':
      if (name.size() != 4 || name[2] != '_') throw fail();
      g = GeneratorSymbol::t(digit(1), digit(3));
      break;
    default:
      throw fail();
  }
  try {
    var_index(g);
  } catch (const ContextError&) {
    throw fail();
  }
  return g;
}

Expression expression_from_json(const nlohmann::json& j) {
  try {
    std::vector<Term> terms;
    for (const auto& t : j.at("terms")) {
      Monomial m;
      for (const auto& f : t.at("factors")) {
        int v = var_index(parse_generator(f.at(0).get<std::string>()));
        m.exp[v] = static_cast<std::int8_t>(m.exp[v] + f.at(1).get<int>());
      }
      terms.push_back({m, Rational::parse(t.at("coeff").get<std::string>())});
    }
    Denominator den;
    for (const auto& d : j.at("denominator")) {
      int a = d.at(0).get<int>();
      int b = d.at(1).get<int>();
      if (a >= b || a < 1 || b > kMaxDimension) throw ParseError("bad denominator pair");
      den.mult[pair_index(a, b)] = static_cast<std::uint8_t>(d.at(2).get<int>());
    }
    return Expression::normalized(Polynomial::from_terms(std::move(terms)), den);
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("malformed expression json: ") + ex.what());
  }
}

}  // namespace rotcalc
