#pragma once

// JSON interchange for Laurent polynomials:
//   {"terms":[{"coeff":"p/q","monomial":{"x[i,j,k]":e,...}},...]}
// with terms in decreasing monomial order.

#include <json.hpp>

#include "cube/laurent.hpp"

namespace cube {

using Json = nlohmann::ordered_json;

Json to_json(const LaurentPoly& p);
LaurentPoly poly_from_json(const Json& j);

Json to_json(const std::vector<LaurentPoly>& coeffs);  // {"coeffs":[...]}, lowest power first

}  // namespace cube
