#include "cube/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>

namespace cube {

std::array<Vertex, 6> neighbors(const Vertex& v) {
  using namespace steps;
  return {v + e12, v - e12, v + e23, v - e23, v + e31, v - e31};
}

Vertex rotate(int m, const Vertex& v) {
  if (v.sum() != m || v.i < 0 || v.j < 0 || v.k < 0)
    throw OutOfRegion("rotate: " + to_string(v) + " is not in the triangle of index " + std::to_string(m));
  return {v.j, v.k, v.i};
}

std::string to_string(const Vertex& v) {
  return "x[" + std::to_string(v.i) + "," + std::to_string(v.j) + "," + std::to_string(v.k) + "]";
}

Vertex parse_vertex(std::string_view text) {
  std::string s(text);
  if (s.starts_with("x")) s.erase(0, 1);
  if (s.starts_with("[")) {
    if (!s.ends_with("]")) throw std::invalid_argument("malformed vertex: " + std::string(text));
    s = s.substr(1, s.size() - 2);
  }
  std::array<int, 3> c{};
  std::size_t pos = 0;
  for (int idx = 0; idx < 3; ++idx) {
    std::size_t end = s.find(',', pos);
    if ((idx < 2) != (end != std::string::npos)) throw std::invalid_argument("malformed vertex: " + std::string(text));
    std::string part = s.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
    std::size_t used = 0;
    try {
      c[idx] = std::stoi(part, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed vertex: " + std::string(text));
    }
    if (used != part.size()) throw std::invalid_argument("malformed vertex: " + std::string(text));
    pos = end + 1;
  }
  return {c[0], c[1], c[2]};
}

namespace {

// (p, q) = (i, -k) are the coefficients of v in the basis (e12, e23).
struct PQ {
  long long p;
  long long q;
};

PQ to_pq(const Vertex& v) { return {v.i, -static_cast<long long>(v.k)}; }
Vertex from_pq(long long p, long long q) {
  return {static_cast<int>(p), static_cast<int>(-p + q), static_cast<int>(-q)};
}

long long ext_gcd(long long a, long long b, long long& x, long long& y) {
  if (b == 0) {
    x = a >= 0 ? 1 : -1;
    y = 0;
    return std::llabs(a);
  }
  long long x1 = 0, y1 = 0;
  long long g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

long long fmod_ll(long long a, long long b) {
  long long r = a % b;
  return r < 0 ? r + b : r;
}

}  // namespace

TorusRegion make_torus(Vertex A, Vertex B) {
  if (A.sum() != 0 || B.sum() != 0) throw std::invalid_argument("torus vectors must lie in the plane i+j+k=0");
  if (color(A) != 0 || color(B) != 0) throw std::invalid_argument("torus vectors must have color 0");
  PQ a = to_pq(A), b = to_pq(B);
  long long det = a.p * b.q - a.q * b.p;
  if (det == 0) throw std::invalid_argument("torus vectors must be linearly independent");

  TorusRegion t{A, B, 0, 0, 0};
  if (a.p == 0 && b.p == 0) throw std::invalid_argument("torus vectors must be linearly independent");
  long long s = 0, u = 0;
  long long g = ext_gcd(a.p, b.p, s, u);  // s*a.p + u*b.p = g > 0
  long long b1p = s * a.p + u * b.p;
  long long b1q = s * a.q + u * b.q;
  long long gamma = std::llabs(det) / g;
  t.alpha = static_cast<int>(b1p);
  t.gamma = static_cast<int>(gamma);
  t.beta = static_cast<int>(fmod_ll(b1q, gamma));
  return t;
}

Region::Region(Kind kind) : kind_(std::move(kind)) {}

Region Region::triangle(int m) {
  if (m < 3) throw std::invalid_argument("triangle requires m >= 3");
  return Region(TriangleRegion{m});
}

Region Region::cylinder(int n, int m) {
  if (n < 1 || m < 2) throw std::invalid_argument("cylinder requires n >= 1 and m >= 2");
  return Region(CylinderRegion{n, m});
}

int Region::plane_index() const {
  if (is_triangle()) return triangle().m;
  return 0;
}

bool Region::contains(const Vertex& v) const {
  if (v.sum() != plane_index()) return false;
  if (is_triangle()) return v.i >= 0 && v.j >= 0 && v.k >= 0;
  if (is_cylinder()) return v.i >= 0 && v.i <= cylinder().m;
  return true;
}

bool Region::is_boundary(const Vertex& v) const {
  if (!contains(v)) throw OutOfRegion(to_string(v) + " is not in " + describe());
  if (is_triangle()) return v.i == 0 || v.j == 0 || v.k == 0;
  if (is_cylinder()) return v.i == 0 || v.i == cylinder().m;
  return false;
}

Vertex Region::canonicalize(const Vertex& v) const {
  if (!contains(v)) throw OutOfRegion(to_string(v) + " is not in " + describe());
  if (is_cylinder()) {
    const auto& c = cylinder();
    int shift = floor_div(v.j, 3 * c.n);
    return v - shift * c.period();
  }
  if (is_torus()) {
    const auto& t = torus();
    PQ x = to_pq(v);
    long long steps1 = x.p >= 0 ? x.p / t.alpha : -((-x.p + t.alpha - 1) / t.alpha);
    long long p = x.p - steps1 * t.alpha;
    long long q = fmod_ll(x.q - steps1 * t.beta, t.gamma);
    return from_pq(p, q);
  }
  return v;
}

std::vector<Vertex> Region::fundamental_domain() const {
  std::vector<Vertex> out;
  if (is_triangle()) {
    int m = triangle().m;
    for (int i = 0; i <= m; ++i)
      for (int j = 0; i + j <= m; ++j) out.push_back({i, j, m - i - j});
  } else if (is_cylinder()) {
    const auto& c = cylinder();
    for (int i = 0; i <= c.m; ++i)
      for (int j = 0; j < 3 * c.n; ++j) out.push_back({i, j, -i - j});
  } else if (is_torus()) {
    const auto& t = torus();
    for (long long p = 0; p < t.alpha; ++p)
      for (long long q = 0; q < t.gamma; ++q) out.push_back(from_pq(p, q));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Vertex> Region::variables() const {
  std::vector<Vertex> out;
  for (const auto& v : fundamental_domain())
    if (!is_boundary(v)) out.push_back(v);
  return out;
}

std::string Region::describe() const {
  std::ostringstream os;
  std::visit(
      [&](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, PlaneRegion>) {
          os << "plane";
        } else if constexpr (std::is_same_v<T, TriangleRegion>) {
          os << "triangle(m=" << r.m << ")";
        } else if constexpr (std::is_same_v<T, CylinderRegion>) {
          os << "cylinder(n=" << r.n << ",m=" << r.m << ")";
        } else {
          os << "torus(A=" << to_string(r.A) << ",B=" << to_string(r.B) << ")";
        }
      },
      kind_);
  return os.str();
}

}  // namespace cube
