#pragma once

// Triangular lattice geometry: vertices (i,j,k) with i+j+k constant, their
// colors, the three step vectors, and the four regions the recurrence lives
// in (plane, triangle, cylinder, torus) together with quotient
// canonicalization.

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace cube {

struct Vertex {
  int i = 0;
  int j = 0;
  int k = 0;

  constexpr int sum() const { return i + j + k; }

  friend constexpr auto operator<=>(const Vertex&, const Vertex&) = default;
  friend constexpr Vertex operator+(Vertex a, Vertex b) { return {a.i + b.i, a.j + b.j, a.k + b.k}; }
  friend constexpr Vertex operator-(Vertex a, Vertex b) { return {a.i - b.i, a.j - b.j, a.k - b.k}; }
  friend constexpr Vertex operator-(Vertex a) { return {-a.i, -a.j, -a.k}; }
  friend constexpr Vertex operator*(int s, Vertex a) { return {s * a.i, s * a.j, s * a.k}; }
};

struct VertexHash {
  std::size_t operator()(const Vertex& v) const noexcept {
    std::uint64_t h = static_cast<std::uint32_t>(v.i);
    h = h * 0x9E3779B97F4A7C15ULL ^ static_cast<std::uint32_t>(v.j);
    h = h * 0x9E3779B97F4A7C15ULL ^ static_cast<std::uint32_t>(v.k);
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

namespace steps {
inline constexpr Vertex e12{1, -1, 0};
inline constexpr Vertex e23{0, 1, -1};
inline constexpr Vertex e31{-1, 0, 1};
}  // namespace steps

/// The three lattice axes in the order the recurrence sums over them.
inline constexpr std::array<Vertex, 3> kAxes{steps::e12, steps::e23, steps::e31};

class OutOfRegion : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// A time that is not congruent to the vertex color mod 3.
class BadParity : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// ((j - k) mod 3), always in {0,1,2}.
constexpr int color(const Vertex& v) {
  int c = (v.j - v.k) % 3;
  return c < 0 ? c + 3 : c;
}

inline constexpr int kRed = 0;
inline constexpr int kGreen = 1;
inline constexpr int kBlue = 2;

/// v+e12, v-e12, v+e23, v-e23, v+e31, v-e31.
std::array<Vertex, 6> neighbors(const Vertex& v);

/// Counterclockwise rotation (i,j,k) -> (j,k,i) of the triangle of index m.
Vertex rotate(int m, const Vertex& v);

std::string to_string(const Vertex& v);      // "x[i,j,k]"
Vertex parse_vertex(std::string_view text);  // accepts "x[i,j,k]", "[i,j,k]" or "i,j,k"

constexpr int floor_div(int a, int b) {
  int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
constexpr int floor_mod(int a, int b) { return a - b * floor_div(a, b); }

struct PlaneRegion {};

struct TriangleRegion {
  int m = 3;
};

struct CylinderRegion {
  int n = 1;
  int m = 2;
  Vertex g() const { return {0, n, -n}; }
  Vertex period() const { return {0, 3 * n, -3 * n}; }  // the shift 3g
};

/// Quotient of the plane by ZA + ZB. The reduction uses a Hermite basis
/// (alpha, beta), (0, gamma) in the coordinates (p, q) = (i, -k).
struct TorusRegion {
  Vertex A;
  Vertex B;
  int alpha = 0;
  int beta = 0;
  int gamma = 0;
};

TorusRegion make_torus(Vertex A, Vertex B);

class Region {
 public:
  using Kind = std::variant<PlaneRegion, TriangleRegion, CylinderRegion, TorusRegion>;

  Region() = default;
  Region(Kind kind);

  static Region plane() { return Region(PlaneRegion{}); }
  static Region triangle(int m);
  static Region cylinder(int n, int m);
  static Region torus(Vertex A, Vertex B) { return Region(make_torus(A, B)); }

  const Kind& kind() const { return kind_; }
  bool is_plane() const { return std::holds_alternative<PlaneRegion>(kind_); }
  bool is_triangle() const { return std::holds_alternative<TriangleRegion>(kind_); }
  bool is_cylinder() const { return std::holds_alternative<CylinderRegion>(kind_); }
  bool is_torus() const { return std::holds_alternative<TorusRegion>(kind_); }
  const TriangleRegion& triangle() const { return std::get<TriangleRegion>(kind_); }
  const CylinderRegion& cylinder() const { return std::get<CylinderRegion>(kind_); }
  const TorusRegion& torus() const { return std::get<TorusRegion>(kind_); }

  /// i+j+k of every vertex: m for the triangle, 0 otherwise.
  int plane_index() const;
  bool contains(const Vertex& v) const;
  bool is_boundary(const Vertex& v) const;

  /// Unique representative of v modulo the region's quotient lattice.
  /// Throws OutOfRegion when v is not in the region.
  Vertex canonicalize(const Vertex& v) const;

  /// Canonical non-boundary vertices (one per variable). Empty for the plane.
  std::vector<Vertex> variables() const;
  /// Canonical vertices of a fundamental domain, boundary included.
  std::vector<Vertex> fundamental_domain() const;

  std::string describe() const;

 private:
  Kind kind_ = PlaneRegion{};
};

}  // namespace cube
