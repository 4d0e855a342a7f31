#include "cube/json_io.hpp"

namespace cube {

Json to_json(const LaurentPoly& p) {
  Json terms = Json::array();
  for (const auto& t : p.terms()) {
    Json mono = Json::object();
    for (const auto& [v, e] : t.mono.factors()) mono[to_string(v)] = e;
    terms.push_back(Json{{"coeff", t.coeff.get_str()}, {"monomial", std::move(mono)}});
  }
  return Json{{"terms", std::move(terms)}};
}

LaurentPoly poly_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array())
    throw std::invalid_argument("LaurentPoly JSON must be an object with a \"terms\" array");
  std::vector<LaurentPoly::Term> terms;
  for (const auto& t : j["terms"]) {
    if (!t.contains("coeff") || !t["coeff"].is_string()) throw std::invalid_argument("term without a string \"coeff\"");
    std::vector<Monomial::Factor> factors;
    if (t.contains("monomial")) {
      for (const auto& [name, e] : t["monomial"].items()) {
        if (!e.is_number_integer()) throw std::invalid_argument("non-integer exponent for " + name);
        factors.push_back({VarId{parse_vertex(name)}, e.get<int>()});
      }
    }
    terms.push_back({Monomial::from_factors(std::move(factors)), parse_rational(t["coeff"].get<std::string>())});
  }
  return LaurentPoly::from_terms(std::move(terms));
}

Json to_json(const std::vector<LaurentPoly>& coeffs) {
  Json arr = Json::array();
  for (const auto& c : coeffs) arr.push_back(to_json(c));
  return Json{{"coeffs", std::move(arr)}};
}

}  // namespace cube
