#include "cube/recurrence.hpp"

#include <algorithm>

namespace cube {

LaurentPoly LaurentAlgebra::initial(const Vertex& canonical) const {
  VarId id{canonical};
  if (auto it = assign.find(id); it != assign.end()) return it->second;
  if (fill) return *fill;
  return LaurentPoly::var(id);
}

LaurentPoly LaurentAlgebra::step(const Value* const (&pairs)[3][2], const Value& divisor) const {
  LaurentPoly num = *pairs[0][0] * *pairs[0][1];
  num += *pairs[1][0] * *pairs[1][1];
  num += *pairs[2][0] * *pairs[2][1];
  return div_exact(num, divisor);
}

SupportAlgebra::Value SupportAlgebra::initial(const Vertex& canonical) const {
  auto it = std::lower_bound(variables.begin(), variables.end(), canonical);
  if (it == variables.end() || *it != canonical)
    throw std::invalid_argument("SupportAlgebra: " + to_string(canonical) + " is not a variable");
  std::size_t bit = static_cast<std::size_t>(it - variables.begin());
  Value out = one();
  for (std::size_t w = 0; w < out.size(); ++w) out[w] = ((w >> bit) & 1U) ? 1 : -1;
  return out;
}

SupportAlgebra::Value SupportAlgebra::step(const Value* const (&pairs)[3][2], const Value& divisor) const {
  Value out(divisor.size());
  for (std::size_t w = 0; w < out.size(); ++w) {
    std::int64_t best = (*pairs[0][0])[w] + (*pairs[0][1])[w];
    best = std::max(best, (*pairs[1][0])[w] + (*pairs[1][1])[w]);
    best = std::max(best, (*pairs[2][0])[w] + (*pairs[2][1])[w]);
    out[w] = best - divisor[w];
  }
  return out;
}

std::int64_t SupportAlgebra::spread(const Value& v) { return *std::max_element(v.begin(), v.end()); }

std::string key_string(const Vertex& v, int t) { return to_string(v) + "@" + std::to_string(t); }

}  // namespace cube
