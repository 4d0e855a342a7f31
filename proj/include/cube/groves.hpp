#pragma once

// Groves: one diagonal per lozenge of the grove graph, forming a forest with
// prescribed boundary connectivity.
//
// The grove graph joins every green or blue vertex u to u+e12, u+e23, u+e31.
// Its faces are lozenges; each lozenge has a red vertex R, a blue vertex
// R+e for one axis e, and two green vertices. Every lozenge also carries the
// network roles a, b, c, d used by the path bijection (see networks.hpp).

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cube/lattice.hpp"
#include "cube/laurent.hpp"

namespace cube {

enum class Diagonal : std::uint8_t { Green = 0, RedBlue = 1 };

struct Lozenge {
  int axis = 0;  // index into kAxes; blue = red + kAxes[axis]
  Vertex red;
  Vertex blue;
  Vertex a, b, c, d;

  static Lozenge at(const Vertex& red, int axis);

  std::array<Vertex, 4> corners() const { return {a, b, c, d}; }
  std::pair<Vertex, Vertex> green() const;
  std::pair<Vertex, Vertex> edge(Diagonal which) const;
  /// red + blue, i.e. twice the center.
  Vertex center2() const { return red + blue; }
  /// (i, j) of the doubled center, the order lozenges are enumerated in.
  std::pair<int, int> row_column() const { return {center2().i, center2().j}; }

  friend bool operator==(const Lozenge& x, const Lozenge& y) { return x.red == y.red && x.axis == y.axis; }
};

/// The lozenge in which u plays role d. Every vertex has exactly one.
Lozenge lozenge_with_d(const Vertex& u);

using Partition = std::vector<std::vector<Vertex>>;  // blocks sorted, then sorted by first element

/// The lozenges of the grove graph inside the triangle with corners
/// apex + t*e12, apex + t*e23, apex + t*e31, with the boundary labels
/// a_1..a_{2t-1}, b_1..b_{2t-1}, c_1..c_{2t-1}.
class GroveRegion {
 public:
  Vertex apex;
  int t = 2;
  std::vector<Lozenge> lozenges;  // sorted by row, then column
  std::vector<Vertex> vertices;   // sorted

  bool in_triangle(const Vertex& u) const;
  bool contains(const Vertex& u) const;  // u is a lozenge vertex
  /// side in {'a','b','c'}, 1 <= index <= 2t-1.
  Vertex label(char side, int index) const;
  /// Distinct boundary vertices in cyclic order a_1, a_2, ..., b_1, ..., c_1, ...
  std::vector<Vertex> boundary() const;
  bool is_boundary(const Vertex& u) const;
  /// 2 at a_1, b_1, c_1; 1 at the other boundary vertices; 0 inside.
  int boundary_excess(const Vertex& u) const;
  int vertex_index(const Vertex& u) const;  // position in `vertices`, -1 if absent
  int lozenge_index(const Lozenge& l) const;

  /// The target boundary partition: pairs {a_i, c_{2t-i}}, {b_i, a_{2t-i}},
  /// {c_i, b_{2t-i}} for 1 <= i <= t, merged.
  Partition target_partition() const;
};

/// Throws BadParity unless t >= 2 and t+1 = color(v) mod 3.
GroveRegion build_region(const Vertex& v, int t);

struct Forest {
  std::vector<Diagonal> choice;  // one per lozenge of the region
  friend bool operator==(const Forest&, const Forest&) = default;
};

std::vector<std::pair<Vertex, Vertex>> forest_edges(const GroveRegion& region, const Forest& f);
bool is_acyclic(const GroveRegion& region, const Forest& f);
/// Partition of the boundary induced by the connected components of f.
Partition boundary_partition(const GroveRegion& region, const Forest& f);
int degree(const GroveRegion& region, const Forest& f, const Vertex& u);

/// True when no two blocks cross with respect to the cyclic order `cycle`.
bool is_noncrossing(const Partition& p, const std::vector<Vertex>& cycle);

/// Every forest whose boundary partition is the target partition.
std::vector<Forest> enumerate_groves(const GroveRegion& region);

/// The variable of u in an ambient region: x_u in the plane; in a cylinder
/// the canonical interior vertex, or nothing (value 1) on or beyond the
/// boundary; in a torus the canonical vertex.
std::optional<VarId> variable_of(const Region& ambient, const Vertex& u);

/// prod over region vertices of x_u^(deg(u) - 2 + boundary_excess(u)).
LaurentPoly weight(const GroveRegion& region, const Forest& f, const Region& ambient = Region::plane());

LaurentPoly grove_sum(const GroveRegion& region, const std::vector<Forest>& groves,
                      const Region& ambient = Region::plane());

// ---- cylinder --------------------------------------------------------------

/// One period (0 <= j < 3n) of the grove graph restricted to the strip
/// 0 <= i <= m. Lozenges are those with all four vertices in the strip,
/// indexed by their canonical red vertex.
struct StripGraph {
  int n = 1;
  int m = 2;
  std::vector<Vertex> vertices;   // canonical, sorted
  std::vector<Lozenge> lozenges;  // red vertex canonical; other roles lifted
  std::vector<Vertex> forced_red;  // red boundary vertices; edge red -> red+e23

  Region region() const { return Region::cylinder(n, m); }
  int vertex_index(const Vertex& canonical) const;
  /// Canonical index and the number of periods separating u from it.
  std::pair<int, int> locate(const Vertex& u) const;
};

StripGraph build_strip_graph(int n, int m);

struct CylGrove {
  std::vector<Diagonal> choice;  // per lozenge of the strip graph
  int h = 0;
  LaurentPoly weight;
};

/// All shift-invariant groves of the strip: one diagonal per lozenge, the
/// forced boundary edges, every component meets both sides.
std::vector<CylGrove> enumerate_cyl_groves(int n, int m);

/// J_0..J_m, the weighted grove counts by h.
std::vector<LaurentPoly> coefficients_J(int n, int m);

// ---- strip-restricted triangle groves --------------------------------------

/// The reference grove: green diagonal exactly on type-e12 lozenges weakly
/// above the apex row and type-e31 lozenges weakly below it.
Forest reference_forest(const GroveRegion& region);

/// Lozenges of the region lying entirely in the strip 0 <= i <= m.
std::vector<bool> strip_mask(const GroveRegion& region, int m);

/// Groves of the region that agree with reference_forest outside the strip.
/// Throws OutOfRegion unless apex is an interior strip vertex.
std::vector<Forest> enumerate_strip_groves(int n, int m, const Vertex& v, int t);

}  // namespace cube
