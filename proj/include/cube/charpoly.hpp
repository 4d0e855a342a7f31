#pragma once

// Univariate polynomials in t with Laurent polynomial coefficients: the
// characteristic polynomial of the cylinder recurrences and the polynomials
// derived from it (products of r roots, c-th powers of roots), all computed
// without ever materializing a root.

#include <stdexcept>
#include <string>
#include <vector>

#include "cube/json_io.hpp"
#include "cube/laurent.hpp"

namespace cube {

class NotMonic : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Two independent computations of the same quantity disagree.
class OracleMismatch : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct CharPoly {
  std::vector<LaurentPoly> coeffs;  // coeffs[s] multiplies t^s; no trailing zeros

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  const LaurentPoly& operator[](int s) const { return coeffs.at(static_cast<std::size_t>(s)); }
  bool is_monic() const { return !coeffs.empty() && coeffs.back() == LaurentPoly(1); }
  void trim();

  friend bool operator==(const CharPoly&, const CharPoly&) = default;
  std::string to_string() const;
};

/// sum_r (-1)^r C_r t^(d-r) for cycle sums C_0..C_d, i.e. (-1)^d times
/// sum_r (-t)^(d-r) C_r, which makes it monic when C_0 = 1.
CharPoly from_cycle_sums(const std::vector<LaurentPoly>& sums);

/// The characteristic polynomial of the shifted cylinder sequences of
/// Cylinder(n, m), from the r-cycles of the strip network. Every coefficient
/// is checked against the grove count J_r; throws OracleMismatch otherwise.
CharPoly char_poly_Q(int n, int m);

/// The polynomial whose roots are the products of r distinct roots of Q:
/// the characteristic polynomial of the r-th exterior power of Q's companion
/// matrix. Throws NotMonic unless Q is monic, std::invalid_argument unless
/// 1 <= r <= deg Q.
CharPoly char_poly_plethysm(const CharPoly& Q, int r);

/// The polynomial whose roots are the c-th powers of the roots of Q.
CharPoly power_roots(const CharPoly& Q, int c);

/// Q(t^k).
CharPoly stretch(const CharPoly& Q, int k);

/// Substitutes into every coefficient; unassigned variables stay symbolic.
CharPoly specialize(const CharPoly& Q, const Assignment& assign);

/// sum_s coeffs[s] * seq[l+s]; the residual of the recurrence at l.
LaurentPoly residual(const CharPoly& Q, const std::vector<LaurentPoly>& seq, std::size_t l);

Json to_json(const CharPoly& Q);
CharPoly charpoly_from_json(const Json& j);

}  // namespace cube
