#pragma once

#include <string_view>

#include <json.hpp>

#include "rotcalc/expression.hpp"

namespace rotcalc {

// {"terms": [{"coeff": "p/q", "factors": [["s1", -2], ...]}, ...],
//  "denominator": [[i, j, m], ...]}
nlohmann::json to_json(const Expression& e);
Expression expression_from_json(const nlohmann::json& j);

// Inverse of GeneratorSymbol::name().
GeneratorSymbol parse_generator(std::string_view name);

}  // namespace rotcalc
