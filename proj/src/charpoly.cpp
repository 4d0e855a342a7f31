#include "cube/charpoly.hpp"

#include <algorithm>
#include <numeric>

#include "cube/groves.hpp"
#include "cube/networks.hpp"

namespace cube {

void CharPoly::trim() {
  while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
}

std::string CharPoly::to_string() const {
  std::string out;
  for (int s = degree(); s >= 0; --s) {
    if (coeffs[static_cast<std::size_t>(s)].is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + coeffs[static_cast<std::size_t>(s)].to_string() + ")";
    if (s > 0) out += "*t^" + std::to_string(s);
  }
  return out.empty() ? "0" : out;
}

CharPoly from_cycle_sums(const std::vector<LaurentPoly>& sums) {
  int d = static_cast<int>(sums.size()) - 1;
  CharPoly q;
  q.coeffs.resize(sums.size());
  for (int r = 0; r <= d; ++r) {
    const LaurentPoly& c = sums[static_cast<std::size_t>(r)];
    q.coeffs[static_cast<std::size_t>(d - r)] = r % 2 == 0 ? c : -c;
  }
  q.trim();
  return q;
}

CharPoly char_poly_Q(int n, int m) {
  auto cycles = cycle_sums(build_strip_network(n, m));
  auto J = coefficients_J(n, m);
  if (cycles.size() != J.size())
    throw OracleMismatch("cycle families reach r=" + std::to_string(cycles.size() - 1) + " but groves reach h=" +
                         std::to_string(J.size() - 1));
  for (std::size_t r = 0; r < J.size(); ++r)
    if (cycles[r] != J[r])
      throw OracleMismatch("r=" + std::to_string(r) + ": cycle sum " + cycles[r].to_string() + " differs from grove sum " +
                           J[r].to_string());
  return from_cycle_sums(cycles);
}

namespace {

using Matrix = std::vector<std::vector<LaurentPoly>>;

Matrix multiply(const Matrix& a, const Matrix& b) {
  std::size_t n = a.size();
  Matrix out(n, std::vector<LaurentPoly>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (!b[k][j].is_zero()) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

Matrix companion(const CharPoly& q) {
  if (!q.is_monic()) throw NotMonic("polynomial " + q.to_string() + " is not monic");
  std::size_t m = static_cast<std::size_t>(q.degree());
  Matrix c(m, std::vector<LaurentPoly>(m));
  for (std::size_t i = 1; i < m; ++i) c[i][i - 1] = LaurentPoly(1);
  for (std::size_t i = 0; i < m; ++i) c[i][m - 1] = -q.coeffs[i];
  return c;
}

// Faddeev-LeVerrier: only integer divisions, so the coefficients stay in
// the Laurent ring whenever the matrix entries do.
CharPoly characteristic(const Matrix& a) {
  std::size_t n = a.size();
  CharPoly p;
  p.coeffs.assign(n + 1, LaurentPoly());
  p.coeffs[n] = LaurentPoly(1);
  Matrix mk(n, std::vector<LaurentPoly>(n));  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    Matrix next = multiply(a, mk);
    for (std::size_t i = 0; i < n; ++i) next[i][i] += p.coeffs[n - k + 1];
    mk = std::move(next);
    Matrix amk = multiply(a, mk);
    LaurentPoly trace;
    for (std::size_t i = 0; i < n; ++i) trace += amk[i][i];
    p.coeffs[n - k] = trace.scaled(Rational(-1, static_cast<long>(k)));
  }
  return p;
}

LaurentPoly determinant(const Matrix& a) {
  std::size_t n = a.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  LaurentPoly det;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    LaurentPoly term(1);
    for (std::size_t i = 0; i < n && !term.is_zero(); ++i) {
      const LaurentPoly& e = a[i][perm[i]];
      if (e.is_zero()) term = LaurentPoly();
      else term *= e;
    }
    if (term.is_zero()) continue;
    det += inversions % 2 == 0 ? term : -term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

std::vector<std::vector<std::size_t>> subsets(std::size_t m, std::size_t r) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t from) -> void {
    if (cur.size() == r) {
      out.push_back(cur);
      return;
    }
    for (std::size_t x = from; x < m; ++x) {
      cur.push_back(x);
      self(self, x + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

Matrix exterior_power(const Matrix& a, std::size_t r) {
  auto idx = subsets(a.size(), r);
  Matrix out(idx.size(), std::vector<LaurentPoly>(idx.size()));
  for (std::size_t x = 0; x < idx.size(); ++x)
    for (std::size_t y = 0; y < idx.size(); ++y) {
      Matrix minor(r, std::vector<LaurentPoly>(r));
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) minor[i][j] = a[idx[x][i]][idx[y][j]];
      out[x][y] = determinant(minor);
    }
  return out;
}

}  // namespace

CharPoly char_poly_plethysm(const CharPoly& Q, int r) {
  if (r < 1 || r > Q.degree())
    throw std::invalid_argument("plethysm: r=" + std::to_string(r) + " outside 1.." + std::to_string(Q.degree()));
  Matrix c = companion(Q);
  if (r == 1) return Q;
  return characteristic(exterior_power(c, static_cast<std::size_t>(r)));
}

CharPoly power_roots(const CharPoly& Q, int c) {
  if (c < 1) throw std::invalid_argument("power_roots: c must be positive");
  Matrix base = companion(Q);
  Matrix p = base;
  for (int k = 1; k < c; ++k) p = multiply(p, base);
  return characteristic(p);
}

CharPoly stretch(const CharPoly& Q, int k) {
  if (k < 1) throw std::invalid_argument("stretch: k must be positive");
  CharPoly out;
  out.coeffs.assign(static_cast<std::size_t>(Q.degree() * k + 1), LaurentPoly());
  for (int s = 0; s <= Q.degree(); ++s) out.coeffs[static_cast<std::size_t>(s * k)] = Q[s];
  return out;
}

CharPoly specialize(const CharPoly& Q, const Assignment& assign) {
  CharPoly out;
  for (const auto& c : Q.coeffs) out.coeffs.push_back(partial_substitute(c, assign));
  out.trim();
  return out;
}

LaurentPoly residual(const CharPoly& Q, const std::vector<LaurentPoly>& seq, std::size_t l) {
  if (l + static_cast<std::size_t>(Q.degree()) >= seq.size()) throw std::out_of_range("residual: sequence too short");
  LaurentPoly sum;
  for (int s = 0; s <= Q.degree(); ++s) sum += Q[s] * seq[l + static_cast<std::size_t>(s)];
  return sum;
}

Json to_json(const CharPoly& Q) { return to_json(Q.coeffs); }

CharPoly charpoly_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_array())
    throw std::invalid_argument("CharPoly JSON must be an object with a \"coeffs\" array");
  CharPoly q;
  for (const auto& c : j["coeffs"]) q.coeffs.push_back(poly_from_json(c));
  return q;
}

}  // namespace cube
