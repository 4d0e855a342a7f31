#include <doctest.h>

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>

#include "cube/groves.hpp"
#include "cube/networks.hpp"
#include "cube/recurrence.hpp"

using namespace cube;

namespace {

// All rooted forests of a small region: every acyclic diagonal choice, and
// every way of picking one boundary vertex per component.
std::vector<RootedForest> all_rooted_forests(const GroveRegion& g) {
  std::size_t L = g.lozenges.size();
  std::vector<RootedForest> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << L); ++mask) {
    Forest f;
    for (std::size_t l = 0; l < L; ++l) f.choice.push_back((mask >> l) & 1 ? Diagonal::RedBlue : Diagonal::Green);
    if (!is_acyclic(g, f)) continue;
    std::vector<int> parent(g.vertices.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); };
    for (auto [u, w] : forest_edges(g, f)) parent[find(g.vertex_index(u))] = find(g.vertex_index(w));
    std::map<int, std::vector<Vertex>> options;
    for (std::size_t x = 0; x < g.vertices.size(); ++x) options[find(static_cast<int>(x))];
    for (const auto& u : g.boundary()) options[find(g.vertex_index(u))].push_back(u);
    std::vector<std::vector<Vertex>> lists;
    bool rootable = true;
    for (auto& [c, list] : options) {
      if (list.empty()) rootable = false;
      lists.push_back(list);
    }
    if (!rootable) continue;
    std::vector<Vertex> roots;
    std::function<void(std::size_t)> pick = [&](std::size_t k) {
      if (k == lists.size()) {
        RootedForest r{f, roots};
        std::sort(r.roots.begin(), r.roots.end());
        out.push_back(std::move(r));
        return;
      }
      for (const auto& u : lists[k]) {
        roots.push_back(u);
        pick(k + 1);
        roots.pop_back();
      }
    };
    pick(0);
  }
  return out;
}

std::vector<int> edge_set(const RPath& p) {
  std::vector<int> out;
  for (const auto& path : p.paths) out.insert(out.end(), path.edges.begin(), path.edges.end());
  std::sort(out.begin(), out.end());
  return out;
}

// Splits an edge set into vertex-disjoint paths with boundary endpoints, or
// nothing when it is not a boundary r-path. With `sources_only`, paths must
// also start at vertices without incoming network edges.
std::optional<RPath> as_boundary_rpath(const GroveRegion& g, const Network& net, const std::vector<int>& edges,
                                       bool sources_only = false) {
  std::map<int, int> out_edge, in_count;
  for (int e : edges) {
    const NetEdge& x = net.edges[static_cast<std::size_t>(e)];
    if (!out_edge.emplace(x.from, e).second) return std::nullopt;
    if (++in_count[x.to] > 1) return std::nullopt;
  }
  RPath p;
  std::size_t used = 0;
  for (const auto& [start, e0] : out_edge) {
    if (in_count.count(start)) continue;
    Path path;
    path.nodes.push_back({start, 0});
    int x = start;
    while (out_edge.count(x)) {
      int e = out_edge[x];
      path.edges.push_back(e);
      x = net.edges[static_cast<std::size_t>(e)].to;
      path.nodes.push_back({x, 0});
    }
    used += path.edges.size();
    const NetNode& a = net.nodes[static_cast<std::size_t>(start)];
    const NetNode& b = net.nodes[static_cast<std::size_t>(x)];
    if (a.is_center() || b.is_center() || !g.is_boundary(a.at) || !g.is_boundary(b.at)) return std::nullopt;
    if (sources_only && !net.in_edges(start).empty()) return std::nullopt;
    p.paths.push_back(std::move(path));
  }
  if (used != edges.size()) return std::nullopt;  // leftover edges lie on cycles
  return p;
}

// Every edge selection with at most one local option per lozenge: nothing,
// or one of a->e->d, b->e->d, c->e->d.
std::vector<std::vector<int>> local_selections(const GroveRegion& g, const Network& net) {
  std::vector<std::vector<int>> out{{}};
  for (std::size_t l = 0; l < g.lozenges.size(); ++l) {
    int e = net.center_node(static_cast<int>(l));
    int down = net.out_edges(e).front();
    std::vector<std::vector<int>> next;
    for (const auto& s : out) {
      next.push_back(s);
      for (int in : net.in_edges(e)) {
        auto t = s;
        t.push_back(in);
        t.push_back(down);
        next.push_back(std::move(t));
      }
    }
    out = std::move(next);
  }
  for (auto& s : out) std::sort(s.begin(), s.end());
  return out;
}

bool unit_step(const Vertex& d) {
  for (const auto& e : kAxes)
    if (d == e || d == -e) return true;
  return false;
}

bool is_grove(const GroveRegion& g, const Forest& f) {
  return is_acyclic(g, f) && boundary_partition(g, f) == g.target_partition();
}

std::vector<Vertex> path_starts(const Network& net, const RPath& p) {
  std::vector<Vertex> out;
  for (const auto& path : p.paths) out.push_back(net.nodes[static_cast<std::size_t>(path.nodes.front().node)].at);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Vertex> path_ends(const Network& net, const RPath& p) {
  std::vector<Vertex> out;
  for (const auto& path : p.paths) out.push_back(net.nodes[static_cast<std::size_t>(path.nodes.back().node)].at);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Vertex> labels(const GroveRegion& g, char side, int from, int to, int step) {
  std::vector<Vertex> out;
  for (int i = from; i <= to; i += step) out.push_back(g.label(side, i));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("triangle network: four edges per lozenge, acyclic") {
  GroveRegion g = build_region({0, 0, 0}, 2);
  Network net = build_triangle_network(g);
  int centers = 0;
  for (std::size_t x = 0; x < net.nodes.size(); ++x) {
    if (!net.nodes[x].is_center()) continue;
    ++centers;
    CHECK(net.in_edges(static_cast<int>(x)).size() == 3);
    CHECK(net.out_edges(static_cast<int>(x)).size() == 1);
  }
  CHECK(centers == 3);
  CHECK(net.edges.size() == 12);
  CHECK(net.is_acyclic());
  for (auto [v, t] : {std::pair{Vertex{1, 0, -1}, 3}, std::pair{Vertex{0, 1, -1}, 4}, std::pair{Vertex{0, 0, 0}, 5}})
    CHECK(build_triangle_network(build_region(v, t)).is_acyclic());

  // Lozenge weights: a and c edges carry x_a x_c / (x_b x_d), the others 1.
  for (std::size_t l = 0; l < g.lozenges.size(); ++l) {
    const Lozenge& z = g.lozenges[l];
    LaurentPoly w = div_exact(LaurentPoly::var({z.a}) * LaurentPoly::var({z.c}),
                              LaurentPoly::var({z.b}) * LaurentPoly::var({z.d}));
    for (int e : net.in_edges(net.center_node(static_cast<int>(l)))) {
      Vertex from = net.nodes[static_cast<std::size_t>(net.edges[static_cast<std::size_t>(e)].from)].at;
      CHECK(net.edges[static_cast<std::size_t>(e)].weight == (from == z.b ? LaurentPoly(1) : w));
    }
  }
}

TEST_CASE("phi is a weight-preserving bijection onto boundary r-paths") {
  for (auto [v, t] : {std::pair{Vertex{0, 0, 0}, 2}, std::pair{Vertex{1, 0, -1}, 3}}) {
    CAPTURE(t);
    GroveRegion g = build_region(v, t);
    Network net = build_triangle_network(g);
    LaurentPoly W = empty_path_weight(g);
    auto forests = all_rooted_forests(g);
    std::set<std::vector<int>> images;
    for (const auto& f : forests) {
      RPath p = phi(g, net, f);
      auto checked = as_boundary_rpath(g, net, edge_set(p));
      REQUIRE(checked.has_value());
      CHECK(phi_inv(g, net, p) == f);
      CHECK(weight(g, f.forest) == rpath_weight(net, p) * W);
      images.insert(edge_set(p));
    }
    CHECK(images.size() == forests.size());

    // Boundary r-paths that start at a vertex with an incoming edge have no
    // preimage: that vertex would get a second outgoing forest edge.
    std::size_t boundary_paths = 0, from_sources = 0;
    for (const auto& s : local_selections(g, net)) {
      auto p = as_boundary_rpath(g, net, s);
      if (!p) continue;
      ++boundary_paths;
      if (!as_boundary_rpath(g, net, s, true)) {
        CHECK_THROWS_AS(oriented_edges(g, phi_inv(g, net, *p)), NotRooted);
        continue;
      }
      ++from_sources;
      RootedForest f = phi_inv(g, net, *p);
      REQUIRE_NOTHROW(oriented_edges(g, f));
      CHECK(edge_set(phi(g, net, f)) == s);
    }
    CHECK(boundary_paths > from_sources);
    CHECK(from_sources == forests.size());
  }
}

TEST_CASE("the empty path family comes from the forest of weight W") {
  GroveRegion g = build_region({1, 0, -1}, 3);
  Network net = build_triangle_network(g);
  RootedForest f = phi_inv(g, net, RPath{});
  CHECK(weight(g, f.forest) == empty_path_weight(g));
  CHECK(phi(g, net, f).paths.empty());
  // W written out: x_{a_1} x_{a_3} x_{a_5} / (x_{a_2} x_{a_4}).
  LaurentPoly W = div_exact(LaurentPoly::var({g.label('a', 1)}) * LaurentPoly::var({g.label('a', 3)}) *
                                LaurentPoly::var({g.label('a', 5)}),
                            LaurentPoly::var({g.label('a', 2)}) * LaurentPoly::var({g.label('a', 4)}));
  CHECK(empty_path_weight(g) == W);
}

TEST_CASE("start and end vertices of phi(F)") {
  for (auto [v, t] : {std::pair{Vertex{0, 0, 0}, 2}, std::pair{Vertex{1, 0, -1}, 3}}) {
    GroveRegion g = build_region(v, t);
    Network net = build_triangle_network(g);
    for (const auto& f : all_rooted_forests(g)) {
      RPath p = phi(g, net, f);
      std::set<Vertex> has_out;
      for (auto [u, w] : oriented_edges(g, f)) has_out.insert(u);
      std::vector<Vertex> starts, ends;
      for (const auto& u : g.vertices) {
        bool outside = g.lozenge_index(lozenge_with_d(u)) < 0;
        if (outside && has_out.count(u)) starts.push_back(u);
        if (!outside && !has_out.count(u)) ends.push_back(u);
      }
      CHECK(path_starts(net, p) == starts);
      CHECK(path_ends(net, p) == ends);
    }
  }
  // Canonically rooted groves start at a_2, a_4, ... and end at b_1..b_{t-1}.
  for (auto [v, t] : {std::pair{Vertex{1, 0, -1}, 3}, std::pair{Vertex{0, 1, -1}, 4}, std::pair{Vertex{0, 0, 0}, 5}}) {
    CAPTURE(t);
    GroveRegion g = build_region(v, t);
    Network net = build_triangle_network(g);
    auto u = labels(g, 'a', 2, 2 * t - 2, 2), w = labels(g, 'b', 1, t - 1, 1);
    for (const auto& grove : enumerate_groves(g)) {
      RootedForest f = canonical_rooting(g, grove);
      CHECK(f.roots == canonical_roots(g));
      RPath p = phi(g, net, f);
      CHECK(p.paths.size() == static_cast<std::size_t>(t - 1));
      CHECK(path_starts(net, p) == u);
      CHECK(path_ends(net, p) == w);
    }
  }
}

TEST_CASE("chord criterion among forests with canonical roots") {
  for (auto [v, t] : {std::pair{Vertex{0, 0, 0}, 2}, std::pair{Vertex{1, 0, -1}, 3}}) {
    CAPTURE(t);
    GroveRegion g = build_region(v, t);
    auto groves = enumerate_groves(g);
    std::size_t L = g.lozenges.size(), rooted = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << L); ++mask) {
      Forest f;
      for (std::size_t l = 0; l < L; ++l) f.choice.push_back((mask >> l) & 1 ? Diagonal::RedBlue : Diagonal::Green);
      if (!is_acyclic(g, f) || !has_canonical_roots(g, f)) continue;
      ++rooted;
      bool grove = std::find(groves.begin(), groves.end(), f) != groves.end();
      CHECK(grove == (root_of(g, f, g.label('a', t + 1)) == g.label('b', t - 1)));
    }
    CHECK(rooted >= groves.size());
  }
}

TEST_CASE("paths from a_2.. to b_{t-1}.. are the forests with canonical roots") {
  for (auto [v, t] : {std::pair{Vertex{1, 0, -1}, 3}, std::pair{Vertex{0, 1, -1}, 4}, std::pair{Vertex{0, 0, 0}, 5}}) {
    CAPTURE(t);
    GroveRegion g = build_region(v, t);
    Network net = build_triangle_network(g);
    std::vector<Lifted> u, w;
    for (int i = 2; i <= 2 * t - 2; i += 2) u.push_back(net.lift(g.label('a', i)));
    for (int i = t - 1; i >= 1; --i) w.push_back(net.lift(g.label('b', i)));
    auto family = enumerate_rpaths(net, u, w);
    std::size_t groves = 0, non_groves = 0;
    LaurentPoly sum;
    for (const auto& p : family) {
      RootedForest f = phi_inv(g, net, p);
      REQUIRE(is_acyclic(g, f.forest));
      CHECK(f.roots == canonical_roots(g));
      bool grove = is_grove(g, f.forest);
      CHECK(grove == (root_of(g, f.forest, g.label('a', t + 1)) == g.label('b', t - 1)));
      if (grove) {
        ++groves;
        sum += weight(g, f.forest);
      } else {
        ++non_groves;
      }
    }
    auto all = enumerate_groves(g);
    CHECK(groves == all.size());
    CHECK(sum == grove_sum(g, all));
    // Some preimages have the right roots but the wrong connectivity.
    CHECK(non_groves > 0);
  }
}

TEST_CASE("strip network shape") {
  for (auto [n, m] : {std::pair{1, 2}, std::pair{1, 3}, std::pair{2, 2}}) {
    CAPTURE(n);
    CAPTURE(m);
    Network net = build_strip_network(n, m);
    // Oracle: lozenges counted from their corner sets. A lozenge is a red R,
    // a blue R+e, and the two green vertices adjacent to both.
    std::size_t lozenges = 0, red_boundary = 0;
    for (int i = 0; i <= m; ++i)
      for (int j = 0; j < 3 * n; ++j) {
        Vertex r{i, j, -i - j};
        if (color(r) != kRed) continue;
        if (i == 0 || i == m) ++red_boundary;
        for (const auto& e : kAxes) {
          Vertex b = r + e;
          bool inside = b.i >= 0 && b.i <= m;
          for (const auto& q : neighbors(r)) {
            if (color(q) != kGreen || !unit_step(q - b)) continue;
            inside = inside && q.i >= 0 && q.i <= m;
          }
          if (inside) ++lozenges;
        }
      }
    std::size_t vertices = static_cast<std::size_t>(3 * n * (m + 1));
    CHECK(net.nodes.size() == vertices + lozenges);
    CHECK(net.edges.size() == 4 * lozenges + red_boundary);
    for (std::size_t x = 0; x < net.nodes.size(); ++x)
      if (net.nodes[x].is_center()) {
        CHECK(net.in_edges(static_cast<int>(x)).size() == 3);
        CHECK(net.out_edges(static_cast<int>(x)).size() == 1);
      }
  }
  Network net = build_strip_network(1, 2);
  CHECK(net.nodes.size() == 14);
  CHECK(net.edges.size() == 22);
}

TEST_CASE("h never decreases along strip paths and rises over two steps") {
  for (auto [n, m] : {std::pair{1, 2}, std::pair{1, 3}, std::pair{2, 2}}) {
    Network net = build_strip_network(n, m);
    // Lattice-to-lattice steps from a vertex lifted to period 0.
    auto steps = [&](Lifted x) {
      std::vector<Lifted> out;
      for (int e : net.out_edges(x.node)) {
        const NetEdge& a = net.edges[static_cast<std::size_t>(e)];
        Lifted y{a.to, x.lift + a.winding};
        if (!net.nodes[static_cast<std::size_t>(y.node)].is_center()) {
          out.push_back(y);
          continue;
        }
        for (int f : net.out_edges(y.node)) {
          const NetEdge& b = net.edges[static_cast<std::size_t>(f)];
          out.push_back({b.to, y.lift + b.winding});
        }
      }
      return out;
    };
    for (std::size_t x = 0; x < net.nodes.size(); ++x) {
      if (net.nodes[x].is_center()) continue;
      Lifted u{static_cast<int>(x), 0};
      for (auto y : steps(u)) {
        CHECK(net.height(y) >= net.height(u));
        for (auto z : steps(y)) CHECK(net.height(z) > net.height(u));
      }
      CHECK(net.height({u.node, 1}) == net.height(u) - 3 * n);
    }
    // Every cycle of the quotient lifts to a path that drops whole periods.
    for (const auto& c : simple_cycles(net)) {
      int lift = 0;
      for (int e : c.edges) lift += net.edges[static_cast<std::size_t>(e)].winding;
      CHECK(lift < 0);
    }
  }
}

TEST_CASE("h-constant endpoints are non-permutable") {
  Network net = build_strip_network(1, 3);
  // Pairs on a common h level at rows (1, 2), ending two or more levels up.
  std::size_t identity = 0;
  for (int j = 0; j < 6; ++j)
    for (int up = 2; up <= 6; ++up) {
      std::vector<Lifted> u{net.lift({1, j, -1 - j}), net.lift({2, j, -2 - j})};
      std::vector<Lifted> w{net.lift({1, j - up, up - j - 1}), net.lift({2, j - up, up - j - 2})};
      identity += enumerate_rpaths(net, u, w).size();
      CHECK(enumerate_rpaths(net, u, {w[1], w[0]}).empty());
    }
  CHECK(identity > 0);
}

TEST_CASE("r-cycles of the strip network give the grove coefficients") {
  Network net = build_strip_network(1, 2);
  auto empty = enumerate_rcycles(net, 0);
  REQUIRE(empty.size() == 1);
  CHECK(empty[0].empty());
  CHECK(rcycle_weight(net, empty[0]) == LaurentPoly(1));
  for (const auto& fam : enumerate_rcycles(net, 2)) {
    std::set<int> seen;
    for (const auto& c : fam)
      for (int x : c.nodes) CHECK(seen.insert(x).second);
  }

  for (auto [n, m] : {std::pair{1, 2}, std::pair{1, 3}, std::pair{2, 2}}) {
    CAPTURE(n);
    CAPTURE(m);
    auto C = cycle_sums(build_strip_network(n, m));
    auto J = coefficients_J(n, m);
    REQUIRE(C.size() == static_cast<std::size_t>(m + 1));
    for (int r = 0; r <= m; ++r) CHECK(C[static_cast<std::size_t>(r)] == J[static_cast<std::size_t>(r)]);
  }
}

TEST_CASE("boundary-adjacent values are path sums times W") {
  for (auto [n, m] : {std::pair{1, 2}, std::pair{1, 3}, std::pair{2, 2}}) {
    Network net = build_strip_network(n, m);
    Region cyl = Region::cylinder(n, m);
    Recurrence rec(cyl);
    for (int j = 0; j < 3; ++j) {
      Vertex v{m - 1, j, 1 - m - j};
      for (int t = 2; t <= 7; ++t) {
        if ((t + 1 - color(v)) % 3 != 0) continue;
        CAPTURE(t);
        GroveRegion g = build_region(v, t);
        auto family = enumerate_rpaths(net, {net.lift(g.label('a', 2))}, {net.lift(g.label('b', t - 1))});
        LaurentPoly sum;
        for (const auto& p : family) sum += rpath_weight(net, p);
        LaurentPoly W = empty_path_weight(g, cyl);
        CHECK(W == LaurentPoly::var({cyl.canonicalize(g.label('a', 1))}));
        CHECK(sum * W == rec.value(v, t + 1));
        CHECK(family.size() == enumerate_strip_groves(n, m, v, t).size());
      }
    }
  }
}

TEST_CASE("network text form") {
  Network net = build_strip_network(1, 2);
  std::string text = net.to_text();
  CHECK(std::count(text.begin(), text.end(), '\n') == static_cast<long>(net.edges.size()));
  CHECK(text == build_strip_network(1, 2).to_text());
}

TEST_CASE("rooting errors") {
  GroveRegion g = build_region({0, 0, 0}, 2);
  Forest f = enumerate_groves(g).front();
  CHECK_THROWS_AS(oriented_edges(g, RootedForest{f, {}}), NotRooted);
  CHECK_THROWS_AS(oriented_edges(g, RootedForest{f, {g.apex}}), NotRooted);
}
