#pragma once

// Weighted directed networks built from lozenges. Inside every lozenge with
// center e there are edges a->e (weight w), b->e (1), c->e (w), e->d (1) where
// w = x_a x_c / (x_b x_d). The strip network is stored on one period of the
// cylinder; each edge records how many periods it crosses so that paths can
// be followed in the strip itself.

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cube/groves.hpp"
#include "cube/laurent.hpp"

namespace cube {

class NotRooted : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct NetNode {
  Vertex at;         // the lattice vertex, or the red vertex of the lozenge for a center
  int lozenge = -1;  // >= 0 for the center of that lozenge
  bool is_center() const { return lozenge >= 0; }
};

struct NetEdge {
  int from = 0;
  int to = 0;
  LaurentPoly weight;
  int winding = 0;  // periods crossed (strip networks only)
};

/// A node of the strip lifted to a given period; planar networks use lift 0.
struct Lifted {
  int node = 0;
  int lift = 0;
  friend auto operator<=>(const Lifted&, const Lifted&) = default;
};

class Network {
 public:
  std::vector<NetNode> nodes;
  std::vector<NetEdge> edges;
  std::vector<Lozenge> lozenges;
  int strip_n = 0;  // 0 for planar networks; n for the strip network of Cylinder(n, m)

  int vertex_node(const Vertex& canonical) const;  // -1 if absent
  int center_node(int lozenge) const;
  const std::vector<int>& out_edges(int node) const { return out_[static_cast<std::size_t>(node)]; }
  const std::vector<int>& in_edges(int node) const { return in_[static_cast<std::size_t>(node)]; }
  std::string node_name(int node) const;

  /// Lifted strip position of a lattice vertex (planar: lift 0).
  Lifted lift(const Vertex& u) const;
  /// -j of the lifted lattice vertex; the strip statistic that never decreases along paths.
  int height(const Lifted& x) const;

  void finalize();  // builds the adjacency lists
  bool is_acyclic() const;

  /// One edge per line: "src dst weight-json".
  std::string to_text() const;

 private:
  std::vector<std::vector<int>> out_, in_;
  std::vector<std::pair<Vertex, int>> vertex_index_;  // sorted (vertex, node)
};

Network build_triangle_network(const GroveRegion& region, const Region& ambient = Region::plane());
/// The quotient of the strip network of Cylinder(n, m): lozenges with all
/// corners in the strip, plus an edge u+e23 -> u at every red boundary u.
Network build_strip_network(int n, int m);

struct Path {
  std::vector<Lifted> nodes;
  std::vector<int> edges;
  friend bool operator==(const Path&, const Path&) = default;
};

struct RPath {
  std::vector<Path> paths;
  friend bool operator==(const RPath&, const RPath&) = default;
};

LaurentPoly path_weight(const Network& net, const Path& p);
LaurentPoly rpath_weight(const Network& net, const RPath& p);

/// Every family of pairwise vertex-disjoint paths, path k running from
/// starts[k] to ends[k]. On a strip network nodes above the highest end are
/// never entered, which keeps the search finite.
std::vector<RPath> enumerate_rpaths(const Network& net, const std::vector<Lifted>& starts,
                                    const std::vector<Lifted>& ends);

struct Cycle {
  std::vector<int> nodes;  // starts at its smallest node
  std::vector<int> edges;
};
using RCycle = std::vector<Cycle>;

/// Simple directed cycles of the (quotient) network.
std::vector<Cycle> simple_cycles(const Network& net);
/// Unordered families of r pairwise vertex-disjoint simple cycles.
std::vector<RCycle> enumerate_rcycles(const Network& net, int r);
LaurentPoly rcycle_weight(const Network& net, const RCycle& c);
/// Weighted sums over r-cycles for r = 0, 1, ... up to the largest nonempty r.
std::vector<LaurentPoly> cycle_sums(const Network& net);

// ---- the forest / path bijection on a triangle region -------------------------

struct RootedForest {
  Forest forest;
  std::vector<Vertex> roots;  // sorted; one boundary vertex per component
  friend bool operator==(const RootedForest&, const RootedForest&) = default;
};

/// Edges of f oriented toward the roots, one per lozenge. Throws NotRooted
/// unless every component holds exactly one root and roots are boundary
/// vertices.
std::vector<std::pair<Vertex, Vertex>> oriented_edges(const GroveRegion& region, const RootedForest& f);

RPath phi(const GroveRegion& region, const Network& net, const RootedForest& f);
/// The inverse on boundary r-paths whose paths start at vertices without
/// incoming edges; other inputs yield edge sets that oriented_edges rejects.
RootedForest phi_inv(const GroveRegion& region, const Network& net, const RPath& p);

/// prod x_{a_odd} / prod x_{a_even}: the weight of the forest with empty image.
LaurentPoly empty_path_weight(const GroveRegion& region, const Region& ambient = Region::plane());

/// Roots c_i where present, b_i otherwise.
RootedForest canonical_rooting(const GroveRegion& region, const Forest& grove);
/// {c_1..c_{2t-1}, b_1..b_{t-1}}.
std::vector<Vertex> canonical_roots(const GroveRegion& region);
/// The canonical root in u's component, or nothing when that component
/// holds none or several.
std::optional<Vertex> root_of(const GroveRegion& region, const Forest& f, const Vertex& u);
/// Whether every component of f holds exactly one canonical root.
bool has_canonical_roots(const GroveRegion& region, const Forest& f);

}  // namespace cube
