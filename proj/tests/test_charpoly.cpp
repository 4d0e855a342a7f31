#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "cube/charpoly.hpp"
#include "cube/groves.hpp"

using namespace cube;

namespace {

LaurentPoly x(const Vertex& v) { return LaurentPoly::var(VarId{v}); }

CharPoly poly(std::vector<long> c) {
  CharPoly q;
  for (long v : c) q.coeffs.emplace_back(v);
  return q;
}

// Roots of a monic polynomial with real coefficients, lowest first, by
// Durand-Kerner iteration in long double.
std::vector<std::complex<long double>> roots(const std::vector<long double>& c) {
  std::size_t n = c.size() - 1;
  std::vector<std::complex<long double>> z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = std::pow(std::complex<long double>(0.4L, 0.9L), static_cast<long double>(i));
  auto eval = [&](std::complex<long double> t) {
    std::complex<long double> v = 0;
    for (std::size_t s = n + 1; s-- > 0;) v = v * t + c[s];
    return v;
  };
  for (int it = 0; it < 2000; ++it) {
    long double moved = 0;
    for (std::size_t i = 0; i < n; ++i) {
      std::complex<long double> den = 1;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) den *= z[i] - z[j];
      std::complex<long double> step = eval(z[i]) / den;
      z[i] -= step;
      moved = std::max(moved, std::abs(step));
    }
    if (moved < 1e-30L) break;
  }
  return z;
}

long double to_ld(const Rational& q) { return static_cast<long double>(q.get_d()); }

}  // namespace

TEST_CASE("from_cycle_sums alternates signs from the top") {
  // C = (1, 6, 1) -> t^2 - 6t + 1; C = (1, a, b, 1) -> t^3 - a t^2 + b t - 1.
  CHECK(from_cycle_sums({1, 6, 1}) == poly({1, -6, 1}));
  CHECK(from_cycle_sums({1, 2, 3, 1}) == poly({-1, 3, -2, 1}));
}

TEST_CASE("Q for Cylinder(1,2)") {
  LaurentPoly xa = x({1, 1, -2}), xb = x({1, 0, -1}), xc = x({1, 2, -3});
  LaurentPoly J1 = div_exact(xc, xa) + div_exact(xa, xc) + div_exact(2, xb * xc) + div_exact(2, xa * xb);
  CharPoly Q = char_poly_Q(1, 2);
  CHECK(Q.coeffs == std::vector<LaurentPoly>{1, -J1, 1});
  Assignment ones;
  for (const auto& u : Region::cylinder(1, 2).variables()) ones[VarId{u}] = 1;
  CHECK(specialize(Q, ones) == poly({1, -6, 1}));
}

TEST_CASE("Q is monic with constant term (-1)^m") {
  for (auto [n, m] : {std::pair{1, 2}, std::pair{1, 3}, std::pair{2, 2}, std::pair{1, 4}}) {
    CharPoly Q = char_poly_Q(n, m);
    CHECK(Q.degree() == m);
    CHECK(Q.is_monic());
    CHECK(Q[0] == LaurentPoly(m % 2 == 0 ? 1 : -1));
    auto J = coefficients_J(n, m);
    for (int r = 0; r <= m; ++r) CHECK(Q[m - r] == (r % 2 == 0 ? J[r] : -J[r]));
  }
}

TEST_CASE("plethysm on integer polynomials") {
  // (t-2)(t-3)(t+1): pairwise products 6, -2, -3.
  CharPoly Q = poly({6, 1, -4, 1});
  CHECK(char_poly_plethysm(Q, 1) == Q);
  CHECK(char_poly_plethysm(Q, 2) == poly({-36, -24, -1, 1}));  // (t-6)(t+2)(t+3)
  CHECK(char_poly_plethysm(Q, 3) == poly({6, 1}));             // t + 6
  CHECK_THROWS_AS(char_poly_plethysm(poly({1, 2, 2}), 1), NotMonic);
  CHECK_THROWS_AS(char_poly_plethysm(Q, 0), std::invalid_argument);
  CHECK_THROWS_AS(char_poly_plethysm(Q, 4), std::invalid_argument);
}

TEST_CASE("plethysm of the (1,2) polynomial") {
  CharPoly Q = char_poly_Q(1, 2);
  CHECK(char_poly_plethysm(Q, 2) == poly({-1, 1}));
  CHECK(char_poly_plethysm(Q, 1) == Q);
}

TEST_CASE("plethysm of the (1,3) polynomial against numerical root products") {
  CharPoly Q = char_poly_Q(1, 3);
  CharPoly Q2 = char_poly_plethysm(Q, 2);
  REQUIRE(Q2.degree() == 3);
  CHECK(Q2.is_monic());
  std::mt19937 rng(20240611);
  std::uniform_int_distribution<int> d(1, 20);
  for (int trial = 0; trial < 3; ++trial) {
    Assignment a;
    for (const auto& u : Region::cylinder(1, 3).variables()) a[VarId{u}] = Rational(d(rng), d(rng));
    std::vector<long double> c;
    for (const auto& q : Q.coeffs) c.push_back(to_ld(substitute(q, a)));
    auto z = roots(c);
    std::vector<std::complex<long double>> prods;
    for (std::size_t i = 0; i < z.size(); ++i)
      for (std::size_t j = i + 1; j < z.size(); ++j) prods.push_back(z[i] * z[j]);
    // prod (t - p) expanded, lowest first.
    std::vector<std::complex<long double>> e{1};
    for (auto p : prods) {
      std::vector<std::complex<long double>> next(e.size() + 1, 0);
      for (std::size_t s = 0; s < e.size(); ++s) {
        next[s + 1] += e[s];
        next[s] -= p * e[s];
      }
      e = next;
    }
    for (int s = 0; s <= 3; ++s) {
      long double exact = to_ld(substitute(Q2[s], a));
      CHECK(std::abs(e[static_cast<std::size_t>(s)].imag()) < 1e-9L * std::max(1.0L, std::abs(exact)));
      CHECK(std::abs(e[static_cast<std::size_t>(s)].real() - exact) < 1e-9L * std::max(1.0L, std::abs(exact)));
    }
  }
}

TEST_CASE("power_roots and stretch") {
  CharPoly Q = poly({1, -6, 1});
  CHECK(power_roots(Q, 1) == Q);
  CHECK(power_roots(Q, 2) == poly({1, -34, 1}));   // r^2 + s^2 = 36 - 2
  CHECK(power_roots(Q, 3) == poly({1, -198, 1}));  // r^3 + s^3 = 216 - 18
  CHECK(stretch(Q, 2) == poly({1, 0, -6, 0, 1}));
  // Roots of Q(t^2) are +-sqrt(r); their cubes +-r^(3/2) pair up into
  // t^2 - r^3 for each root r of Q.
  CHECK(power_roots(stretch(Q, 2), 3) == stretch(power_roots(Q, 3), 2));
}

TEST_CASE("residual") {
  CharPoly Q = poly({1, -6, 1});
  std::vector<LaurentPoly> seq{1, 3, 17, 99, 577};
  for (std::size_t l = 0; l + 2 < seq.size(); ++l) CHECK(residual(Q, seq, l).is_zero());
  CHECK_THROWS_AS(residual(Q, seq, 3), std::out_of_range);
}

TEST_CASE("CharPoly JSON round trip") {
  CharPoly Q = char_poly_Q(1, 3);
  Json j = to_json(Q);
  CHECK(j["coeffs"].size() == 4);
  CHECK(charpoly_from_json(j) == Q);
  CHECK(charpoly_from_json(Json::parse(j.dump())) == Q);
}
