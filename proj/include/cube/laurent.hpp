#pragma once

// Sparse multivariate Laurent polynomials with exact rational coefficients.
//
// Monomials are ordered graded-lexicographically: first by the signed total
// degree, then lexicographically with variables ordered by the (i,j,k)
// coordinates of their canonical vertex (smaller vertex = more significant).
// This is a group order on exponent vectors, so it is compatible with
// multiplication and the leading term of a product is the product of the
// leading terms.

#include <gmpxx.h>

#include <compare>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cube/lattice.hpp"

namespace cube {

using Rational = mpq_class;

/// Parses "p/q" or an integer literal. Decimal points are rejected.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

/// The indeterminate attached to a canonical vertex of a region.
struct VarId {
  Vertex at;
  friend constexpr auto operator<=>(const VarId&, const VarId&) = default;
};

inline std::string to_string(const VarId& v) { return to_string(v.at); }

class NotDivisible : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};
class MissingAssignment : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
class ZeroSubstitution : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};
class ZeroPolynomial : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class Monomial {
 public:
  using Factor = std::pair<VarId, int>;

  Monomial() = default;
  static Monomial var(VarId v, int exponent = 1);
  /// Builds a monomial from arbitrary factors; merges repeats, drops zeros.
  static Monomial from_factors(std::vector<Factor> factors);

  const std::vector<Factor>& factors() const { return factors_; }
  int exponent(const VarId& v) const;
  int total_degree() const;
  int l1_size() const;
  bool is_one() const { return factors_.empty(); }
  Monomial inverse() const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend Monomial operator/(const Monomial& a, const Monomial& b) { return a * b.inverse(); }
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.factors_ == b.factors_; }
  /// The fixed graded-lexicographic order.
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);

  std::string to_string() const;

 private:
  std::vector<Factor> factors_;  // sorted by VarId, no zero exponents
};

class LaurentPoly {
 public:
  struct Term {
    Monomial mono;
    Rational coeff;
    friend bool operator==(const Term& a, const Term& b) { return a.mono == b.mono && a.coeff == b.coeff; }
  };

  LaurentPoly() = default;
  LaurentPoly(const Rational& c);  // NOLINT(google-explicit-constructor): constants embed implicitly
  LaurentPoly(long c) : LaurentPoly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  LaurentPoly(int c) : LaurentPoly(Rational(c)) {}   // NOLINT(google-explicit-constructor)

  static LaurentPoly var(VarId v) { return monomial(Monomial::var(v)); }
  static LaurentPoly monomial(Monomial m, Rational c = 1);
  /// Sorts, merges equal monomials and drops zero coefficients.
  static LaurentPoly from_terms(std::vector<Term> terms);
  /// Takes terms that are already strictly decreasing with nonzero coefficients.
  static LaurentPoly from_canonical_terms(std::vector<Term> terms);

  /// Terms in decreasing monomial order.
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }
  std::optional<Rational> as_constant() const;
  const Term& leading_term() const;
  const Term& trailing_term() const;
  std::vector<VarId> variables() const;

  LaurentPoly& operator+=(const LaurentPoly& b);
  LaurentPoly& operator-=(const LaurentPoly& b);
  LaurentPoly& operator*=(const LaurentPoly& b);

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator-(const LaurentPoly& a);
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }

  LaurentPoly scaled(const Rational& c) const;

  std::string to_string() const;

 private:
  std::vector<Term> terms_;
};

using Assignment = std::map<VarId, Rational>;

LaurentPoly add(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly mul(const LaurentPoly& a, const LaurentPoly& b);

/// Returns q with q * den == num. Throws NotDivisible when no such Laurent
/// polynomial exists and ZeroPolynomial when den is zero.
LaurentPoly div_exact(const LaurentPoly& num, const LaurentPoly& den);

/// Exact evaluation. Every variable of p must be assigned; a zero value is
/// rejected for variables that occur with a negative exponent.
Rational substitute(const LaurentPoly& p, const Assignment& assign);

/// Substitutes the assigned variables and keeps the others symbolic.
LaurentPoly partial_substitute(const LaurentPoly& p, const Assignment& assign);

/// max over monomials of the sum of absolute exponents.
int degree_spread(const LaurentPoly& p);

Rational pow(const Rational& base, int exponent);

}  // namespace cube
