#include <doctest.h>

#include <cstdlib>

#include "cube/groves.hpp"
#include "cube/recurrence.hpp"
#include "cube/verify.hpp"

using namespace cube;

namespace {

Assignment all_ones(const Region& r) {
  Assignment a;
  for (const auto& u : r.variables()) a[VarId{u}] = 1;
  return a;
}

std::vector<LaurentPoly> ints(std::vector<long> xs) { return {xs.begin(), xs.end()}; }

}  // namespace

TEST_CASE("random assignments are reproducible small rationals") {
  Region cyl = Region::cylinder(1, 3);
  Assignment a = random_assignment(cyl, 42), b = random_assignment(cyl, 42), c = random_assignment(cyl, 43);
  CHECK(a == b);
  CHECK(a != c);
  CHECK(a.size() == cyl.variables().size());
  for (const auto& [id, q] : a) {
    CHECK(q >= Rational(1, 20));
    CHECK(q <= 20);
    CHECK(q.get_num() <= 20);
    CHECK(q.get_den() <= 20);
  }
}

TEST_CASE("CUBE_THREADS bounds the worker count") {
  setenv("CUBE_THREADS", "3", 1);
  CHECK(worker_count() == 3);
  setenv("CUBE_THREADS", "zero", 1);
  CHECK(worker_count() >= 1);
  setenv("CUBE_THREADS", "1", 1);
  CHECK(worker_count() == 1);
}

TEST_CASE("periodicity on small triangles") {
  auto sym = check_periodicity(3, Symbolic{});
  CHECK(sym.pass());
  CHECK(sym.symbolic);
  CHECK(sym.comparisons > 0);
  for (int m : {4, 5}) {
    auto rep = check_periodicity(m, RandomRational{7, 3});
    CHECK(rep.pass());
    CHECK(rep.trials == 3);
    CHECK_FALSE(rep.symbolic);
  }
  CHECK_THROWS_AS(check_periodicity(2, Symbolic{}), std::invalid_argument);
  CHECK_THROWS_AS(check_periodicity(4, RandomRational{1, 0}), std::invalid_argument);
}

TEST_CASE("the worked-example specialization returns rotated after 2m steps") {
  LaurentAlgebra alg;
  alg.fill = Rational(1);
  alg.assign[VarId{{1, 3, 1}}] = 3;
  Recurrence rec(Region::triangle(5), alg);
  for (const auto& v : Region::triangle(5).fundamental_domain())
    for (int t = color(v); t <= 2; t += 3) CHECK(rec.value(rotate(5, v), t + 10) == rec.value(v, t));
  CHECK(rec.value({3, 1, 1}, 12) == LaurentPoly(3));
}

TEST_CASE("boundary-adjacent recurrence on Cylinder(1,2)") {
  Region cyl = Region::cylinder(1, 2);
  for (int j = 0; j < 3; ++j) {
    Vertex v{1, j, -1 - j};
    auto cert = check_cylinder_recurrence(1, 2, v, 8);
    CAPTURE(to_string(v));
    CHECK(cert.valid());
    CHECK(cert.onset == 0);
    CHECK(cert.residuals.size() == 7);
    for (const auto& r : cert.residuals) CHECK(r.is_zero());
    CHECK(cert.char_poly == char_poly_Q(1, 2));
    CHECK_FALSE(cert.specialization.has_value());
  }
  auto ones = check_cylinder_recurrence(1, 2, {1, 0, -1}, 8, all_ones(cyl));
  CHECK(ones.char_poly.coeffs == ints({1, -6, 1}));
  CHECK(std::vector<LaurentPoly>(ones.sequence.begin(), ones.sequence.begin() + 4) == ints({1, 3, 17, 99}));
  CHECK(99 - 6 * 17 + 3 == 0);
  CHECK(ones.valid());
}

TEST_CASE("boundary-adjacent recurrence under random rationals") {
  for (auto [n, m] : {std::pair{1, 3}, std::pair{2, 2}}) {
    Region cyl = Region::cylinder(n, m);
    for (int j = 0; j < 3; ++j) {
      Vertex v{m - 1, j, 1 - m - j};
      auto cert = check_cylinder_recurrence(n, m, v, 8, random_assignment(cyl, 100 + j));
      CAPTURE(to_string(v));
      CHECK(cert.valid());
      for (const auto& r : cert.residuals) CHECK(r.as_constant().has_value());
    }
  }
}

TEST_CASE("the literal coefficient order fails when J is not palindromic") {
  Region cyl = Region::cylinder(1, 3);
  Assignment a = random_assignment(cyl, 9);
  auto J = coefficients_J(1, 3);
  CHECK(J[1] != J[2]);
  CharPoly literal;
  for (int s = 0; s <= 3; ++s) literal.coeffs.push_back(partial_substitute(s % 2 == 0 ? J[s] : -J[s], a));
  LaurentAlgebra alg;
  alg.assign = a;
  Recurrence rec(cyl, alg);
  auto seq = rec.flatten_cylinder_sequence({2, 0, -2}, Recurrence::Mode::Shifted, 9);
  int nonzero = 0;
  for (std::size_t l = 0; l + 3 < seq.size(); ++l) nonzero += !residual(literal, seq, l).is_zero();
  CHECK(nonzero > 0);
  CHECK(check_cylinder_recurrence(1, 3, {2, 0, -2}, 8, a).valid());
}

TEST_CASE("a short window is reported, not certified") {
  try {
    check_cylinder_recurrence(1, 2, {1, 0, -1}, 3);
    FAIL("expected WindowTooSmall");
  } catch (const WindowTooSmall& e) {
    CHECK(e.certificate.residuals.size() == 2);
    CHECK_FALSE(e.certificate.valid());
  }
  CHECK_THROWS_AS(check_cylinder_recurrence(1, 2, {1, 0, -1}, 1), WindowTooSmall);
}

TEST_CASE("recurrence preconditions") {
  CHECK_THROWS_AS(check_cylinder_recurrence(1, 3, {1, 0, -1}, 8), std::invalid_argument);
  CHECK_THROWS_AS(check_cylinder_recurrence(1, 2, {5, 0, -5}, 8), OutOfRegion);
  CHECK_THROWS_AS(check_plethysm_recurrence(1, 2, {2, 0, -2}, 8), std::invalid_argument);
  CHECK_THROWS_AS(check_cylinder_recurrence(1, 2, {1, 0, -1}, -1), std::invalid_argument);
}

TEST_CASE("plethysm recurrences") {
  SUBCASE("depth one is the boundary-adjacent case") {
    auto a = check_plethysm_recurrence(1, 2, {1, 1, -2}, 8);
    CHECK(a.r == 1);
    CHECK(a.char_poly == check_cylinder_recurrence(1, 2, {1, 1, -2}, 8).char_poly);
    CHECK(a.valid());
  }
  SUBCASE("the boundary of Cylinder(1,2) is governed by t - 1") {
    auto b = check_plethysm_recurrence(1, 2, {0, 0, 0}, 8);
    CHECK(b.r == 2);
    CHECK(b.char_poly.coeffs == ints({-1, 1}));
    CHECK(b.sequence == std::vector<LaurentPoly>(9, LaurentPoly(1)));
    CHECK(b.valid());
  }
  SUBCASE("depth two of Cylinder(1,3) under three seeds") {
    for (int j = 0; j < 3; ++j) {
      auto certs = check_plethysm_recurrence(1, 3, {1, j, -1 - j}, 8, CheckMode{RandomRational{2024, 3}});
      REQUIRE(certs.size() == 3);
      for (const auto& c : certs) {
        CHECK(c.r == 2);
        CHECK(c.char_poly.degree() == 3);
        CHECK(c.valid());
      }
      CHECK(certs[0].specialization != certs[1].specialization);
    }
  }
}

TEST_CASE("fixed-vertex subsample of A079496") {
  Region cyl = Region::cylinder(1, 2);
  auto rep = check_fixed_vertex_subsample(2, {1, 1, -2}, all_ones(cyl), 30);
  std::vector<Rational> prefix(rep.column.begin(), rep.column.begin() + 9);
  CHECK(prefix == std::vector<Rational>{1, 1, 1, 3, 5, 17, 29, 99, 169});
  // A079496 by its own recurrence.
  for (std::size_t t = 3; t < rep.column.size(); ++t)
    CHECK(rep.column[t] * rep.column[t - 3] == rep.column[t - 1] * rep.column[t - 2] + 2);
  for (std::size_t s = 0; s < rep.fixed.size(); ++s) CHECK(rep.fixed[s] == rep.column[3 * s]);
  CHECK(rep.interleaved_poly.coeffs == ints({1, 0, -6, 0, 1}));
  CHECK(rep.fixed_poly.coeffs == ints({1, 0, -198, 0, 1}));
  CHECK(rep.pass());
  CHECK(rep.interleaved_onset == 0);
  CHECK(rep.fixed_onset == 0);
}

TEST_CASE("fixed-vertex subsample on Cylinder(1,3) at random points") {
  Region cyl = Region::cylinder(1, 3);
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    auto rep = check_fixed_vertex_subsample(3, {2, 0, -2}, random_assignment(cyl, seed), 36);
    CHECK(rep.pass());
  }
  CHECK_THROWS_AS(check_fixed_vertex_subsample(3, {2, 0, -2}, {}, 36), MissingAssignment);
}

TEST_CASE("grove oracle") {
  for (int t = 2; t <= 4; ++t) {
    auto results = cross_check_grove_oracle(default_grove_scope(t, 5));
    REQUIRE(!results.empty());
    for (const auto& r : results) {
      CAPTURE(to_json(r).dump());
      CHECK(r.match);
      CHECK(r.groves > 0);
    }
  }
  auto t2 = cross_check_grove_oracle({{Region::plane(), {0, 0, 0}, 2, std::nullopt}});
  CHECK(t2[0].groves == 3);
  CHECK(default_grove_scope(4, 1)[0].seed.has_value());
  CHECK_FALSE(default_grove_scope(3, 1)[0].seed.has_value());
  CHECK_THROWS_AS(default_grove_scope(1, 1), std::invalid_argument);
  CHECK_THROWS_AS(cross_check_grove_oracle({{Region::triangle(5), {1, 2, 2}, 2, std::nullopt}}), std::invalid_argument);
}

TEST_CASE("torus degree growth") {
  Vertex A{3, -3, 0}, B{0, 3, -3};
  auto rep = measure_degree_growth(A, B, {0, 0, 0}, 12);
  CHECK(rep.degrees.size() == 13);
  CHECK(rep.second_differences.size() == 11);
  CHECK(rep.nondecreasing());
  CHECK(rep.quadratic_beats_linear());
  CHECK(rep.second_differences_banded());
  CHECK(rep.pass());
  CHECK(rep.min_ratio > 0);
  CHECK(rep.max_ratio < 5);

  // Early degrees recomputed from the exact polynomials.
  Recurrence sym(Region::torus(A, B));
  for (int T = 0; T <= 2; ++T) CHECK(degree_spread(sym.value({0, 0, 0}, 3 * T)) == rep.degrees[static_cast<std::size_t>(T)]);
  CHECK_THROWS_AS(measure_degree_growth(A, B, {0, 0, 0}, 5), std::invalid_argument);
}

TEST_CASE("growth predicates on hand-made sequences") {
  GrowthReport flat;
  flat.degrees = {1, 1, 1};
  flat.second_differences = {0};
  flat.quadratic_coefficient = 0;
  CHECK(flat.nondecreasing());
  CHECK_FALSE(flat.second_differences_banded());

  GrowthReport bumpy;
  bumpy.degrees = {5, 4};
  bumpy.quadratic_coefficient = 2;
  bumpy.second_differences = {4, 9};
  CHECK_FALSE(bumpy.nondecreasing());
  CHECK_FALSE(bumpy.second_differences_banded());
  bumpy.second_differences = {2, 8};
  CHECK(bumpy.second_differences_banded());
}

TEST_CASE("reports serialize") {
  Json p = to_json(check_periodicity(3, Symbolic{}));
  CHECK(p["pass"] == true);
  CHECK(p["witness"].is_null());
  Json c = to_json(check_cylinder_recurrence(1, 2, {1, 0, -1}, 8));
  CHECK(c["onset"] == 0);
  CHECK(c["valid"] == true);
  CHECK(charpoly_from_json(c["char_poly"]) == char_poly_Q(1, 2));
  CHECK(c["residuals"].size() == 7);
  CHECK(c["specialization"].is_null());
  Json g = to_json(measure_degree_growth({3, -3, 0}, {0, 3, -3}, {0, 0, 0}, 6));
  CHECK(g["degrees"].size() == 7);
  CHECK(Json::parse(g.dump()) == g);
}
