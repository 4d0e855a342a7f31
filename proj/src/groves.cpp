#include "cube/groves.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

#include "forest_search.hpp"

namespace cube {

using steps::e12;
using steps::e23;
using steps::e31;

Lozenge Lozenge::at(const Vertex& red, int axis) {
  if (color(red) != kRed) throw std::invalid_argument("Lozenge::at: " + to_string(red) + " is not red");
  Lozenge l;
  l.axis = axis;
  l.red = red;
  l.blue = red + kAxes[static_cast<std::size_t>(axis)];
  switch (axis) {
    case 0:  // e12
      l.b = red, l.d = l.blue, l.a = red - e31, l.c = red - e23;
      break;
    case 1:  // e23
      l.d = red, l.b = l.blue, l.a = red - e31, l.c = red - e12;
      break;
    case 2:  // e31
      l.a = red, l.c = l.blue, l.b = red - e12, l.d = red - e23;
      break;
    default:
      throw std::invalid_argument("Lozenge::at: axis must be 0, 1 or 2");
  }
  return l;
}

std::pair<Vertex, Vertex> Lozenge::green() const { return axis == 2 ? std::pair{b, d} : std::pair{a, c}; }

std::pair<Vertex, Vertex> Lozenge::edge(Diagonal which) const {
  return which == Diagonal::Green ? green() : std::pair{red, blue};
}

Lozenge lozenge_with_d(const Vertex& u) {
  switch (color(u)) {
    case kRed: return Lozenge::at(u, 1);
    case kBlue: return Lozenge::at(u - e12, 0);
    default: return Lozenge::at(u + e23, 2);
  }
}

// ---- triangle region --------------------------------------------------------

bool GroveRegion::in_triangle(const Vertex& u) const {
  Vertex w = u - apex;
  if (w.sum() != 0) return false;
  return w.i - w.j >= -t && w.j - w.k >= -t && w.k - w.i >= -t;
}

bool GroveRegion::contains(const Vertex& u) const { return std::binary_search(vertices.begin(), vertices.end(), u); }

Vertex GroveRegion::label(char side, int index) const {
  if (index < 1 || index > 2 * t - 1)
    throw std::out_of_range("label index " + std::to_string(index) + " outside 1.." + std::to_string(2 * t - 1));
  Vertex off;
  if (index % 2 == 0) {
    int i = index / 2;
    switch (side) {
      case 'a': off = {i, t - 2 * i, i - t}; break;
      case 'b': off = {t - 2 * i, i - t, i}; break;
      case 'c': off = {i - t, i, t - 2 * i}; break;
      default: throw std::invalid_argument("label side must be a, b or c");
    }
  } else {
    int i = (index - 1) / 2;
    switch (side) {
      case 'a': off = {i, t - 1 - 2 * i, i - t + 1}; break;
      case 'b': off = {t - 1 - 2 * i, i - t + 1, i}; break;
      case 'c': off = {i - t + 1, i, t - 1 - 2 * i}; break;
      default: throw std::invalid_argument("label side must be a, b or c");
    }
  }
  return apex + off;
}

std::vector<Vertex> GroveRegion::boundary() const {
  std::vector<Vertex> out;
  for (char side : {'a', 'b', 'c'})
    for (int i = 1; i <= 2 * t - 2; ++i) out.push_back(label(side, i));
  return out;
}

bool GroveRegion::is_boundary(const Vertex& u) const {
  auto b = boundary();
  return std::find(b.begin(), b.end(), u) != b.end();
}

int GroveRegion::boundary_excess(const Vertex& u) const {
  if (u == label('a', 1) || u == label('b', 1) || u == label('c', 1)) return 2;
  return is_boundary(u) ? 1 : 0;
}

int GroveRegion::vertex_index(const Vertex& u) const {
  auto it = std::lower_bound(vertices.begin(), vertices.end(), u);
  if (it == vertices.end() || *it != u) return -1;
  return static_cast<int>(it - vertices.begin());
}

int GroveRegion::lozenge_index(const Lozenge& l) const {
  for (std::size_t x = 0; x < lozenges.size(); ++x)
    if (lozenges[x] == l) return static_cast<int>(x);
  return -1;
}

namespace {

Partition normalize(Partition p) {
  for (auto& b : p) std::sort(b.begin(), b.end());
  std::sort(p.begin(), p.end());
  return p;
}

// Plain union-find over small index sets.
struct Dsu {
  std::vector<int> parent;
  explicit Dsu(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  bool unite(int x, int y) {
    x = find(x), y = find(y);
    if (x == y) return false;
    parent[y] = x;
    return true;
  }
};

}  // namespace

Partition GroveRegion::target_partition() const {
  auto cycle = boundary();
  auto pos = [&](const Vertex& u) {
    return static_cast<int>(std::find(cycle.begin(), cycle.end(), u) - cycle.begin());
  };
  Dsu dsu(cycle.size());
  for (int i = 1; i <= t; ++i) {
    dsu.unite(pos(label('a', i)), pos(label('c', 2 * t - i)));
    dsu.unite(pos(label('b', i)), pos(label('a', 2 * t - i)));
    dsu.unite(pos(label('c', i)), pos(label('b', 2 * t - i)));
  }
  std::map<int, std::vector<Vertex>> blocks;
  for (std::size_t x = 0; x < cycle.size(); ++x) blocks[dsu.find(static_cast<int>(x))].push_back(cycle[x]);
  Partition out;
  for (auto& [root, b] : blocks) out.push_back(std::move(b));
  return normalize(std::move(out));
}

GroveRegion build_region(const Vertex& v, int t) {
  if (t < 2 || floor_mod(t + 1 - color(v), 3) != 0)
    throw BadParity("grove region needs t >= 2 and t+1 = color(v) mod 3; got t=" + std::to_string(t) +
                    " at " + to_string(v) + " (color " + std::to_string(color(v)) + ")");
  GroveRegion g;
  g.apex = v;
  g.t = t;
  for (int p = -t; p <= t; ++p)
    for (int q = -t; q <= t; ++q) {
      Vertex r = v + Vertex{p, q, -p - q};
      if (color(r) != kRed) continue;
      for (int axis = 0; axis < 3; ++axis) {
        Lozenge l = Lozenge::at(r, axis);
        bool inside = true;
        for (const auto& c : l.corners()) inside = inside && g.in_triangle(c);
        if (inside) g.lozenges.push_back(l);
      }
    }
  std::sort(g.lozenges.begin(), g.lozenges.end(),
            [](const Lozenge& x, const Lozenge& y) { return x.row_column() < y.row_column(); });
  for (const auto& l : g.lozenges)
    for (const auto& c : l.corners()) g.vertices.push_back(c);
  std::sort(g.vertices.begin(), g.vertices.end());
  g.vertices.erase(std::unique(g.vertices.begin(), g.vertices.end()), g.vertices.end());
  return g;
}

// ---- forests ----------------------------------------------------------------

std::vector<std::pair<Vertex, Vertex>> forest_edges(const GroveRegion& region, const Forest& f) {
  if (f.choice.size() != region.lozenges.size()) throw std::invalid_argument("forest does not match the region");
  std::vector<std::pair<Vertex, Vertex>> out;
  out.reserve(f.choice.size());
  for (std::size_t l = 0; l < f.choice.size(); ++l) out.push_back(region.lozenges[l].edge(f.choice[l]));
  return out;
}

namespace {

Dsu components(const GroveRegion& region, const Forest& f, bool* acyclic) {
  Dsu dsu(region.vertices.size());
  bool ok = true;
  for (const auto& [u, w] : forest_edges(region, f))
    ok = dsu.unite(region.vertex_index(u), region.vertex_index(w)) && ok;
  if (acyclic) *acyclic = ok;
  return dsu;
}

}  // namespace

bool is_acyclic(const GroveRegion& region, const Forest& f) {
  bool ok = false;
  components(region, f, &ok);
  return ok;
}

Partition boundary_partition(const GroveRegion& region, const Forest& f) {
  Dsu dsu = components(region, f, nullptr);
  std::map<int, std::vector<Vertex>> blocks;
  for (const auto& u : region.boundary()) blocks[dsu.find(region.vertex_index(u))].push_back(u);
  Partition out;
  for (auto& [root, b] : blocks) out.push_back(std::move(b));
  return normalize(std::move(out));
}

int degree(const GroveRegion& region, const Forest& f, const Vertex& u) {
  int d = 0;
  for (const auto& [x, y] : forest_edges(region, f)) d += (x == u) + (y == u);
  return d;
}

bool is_noncrossing(const Partition& p, const std::vector<Vertex>& cycle) {
  std::map<Vertex, int> block_of;
  for (std::size_t b = 0; b < p.size(); ++b)
    for (const auto& u : p[b]) block_of[u] = static_cast<int>(b);
  for (std::size_t x = 0; x < p.size(); ++x)
    for (std::size_t y = x + 1; y < p.size(); ++y) {
      // Alternations of x and y around the cycle; more than two means crossing.
      std::vector<int> seq;
      for (const auto& u : cycle) {
        auto it = block_of.find(u);
        if (it == block_of.end() || (it->second != static_cast<int>(x) && it->second != static_cast<int>(y)))
          continue;
        if (seq.empty() || seq.back() != it->second) seq.push_back(it->second);
      }
      if (seq.size() > 1 && seq.front() == seq.back()) seq.pop_back();
      if (seq.size() > 2) return false;
    }
  return true;
}

namespace {

detail::SearchProblem triangle_problem(const GroveRegion& region, const std::vector<int>& fixed) {
  detail::SearchProblem p;
  p.num_vertices = static_cast<int>(region.vertices.size());
  for (const auto& l : region.lozenges) {
    std::array<int, 4> c{};
    auto corners = l.corners();
    for (int x = 0; x < 4; ++x) c[x] = region.vertex_index(corners[x]);
    p.corners.push_back(c);
    std::array<detail::SearchEdge, 2> d{};
    for (int x = 0; x < 2; ++x) {
      auto [u, w] = l.edge(static_cast<Diagonal>(x));
      d[x] = {region.vertex_index(u), region.vertex_index(w), 0};
    }
    p.diagonals.push_back(d);
  }
  p.fixed = fixed;
  p.mode = detail::SearchProblem::Mode::Blocks;
  p.block.assign(region.vertices.size(), -1);
  auto target = region.target_partition();
  for (std::size_t b = 0; b < target.size(); ++b) {
    for (const auto& u : target[b]) {
      int x = region.vertex_index(u);
      if (x < 0) throw std::logic_error("boundary vertex " + to_string(u) + " is not a lozenge vertex");
      p.block[x] = static_cast<int>(b);
    }
    p.block_size.push_back(static_cast<int>(target[b].size()));
  }
  // A forest has |V| - |L| components; when that equals the number of target
  // blocks, no grove can have a component without boundary vertices.
  p.require_block = region.vertices.size() - region.lozenges.size() == target.size();
  return p;
}

std::vector<Forest> run_triangle_search(const GroveRegion& region, const std::vector<int>& fixed) {
  auto problem = triangle_problem(region, fixed);
  std::vector<Forest> out;
  detail::search_diagonals(problem, [&](const std::vector<std::uint8_t>& choice, const detail::RollbackUnionFind&) {
    Forest f;
    f.choice.reserve(choice.size());
    for (auto c : choice) f.choice.push_back(static_cast<Diagonal>(c));
    out.push_back(std::move(f));
  });
  return out;
}

}  // namespace

std::vector<Forest> enumerate_groves(const GroveRegion& region) {
  return run_triangle_search(region, std::vector<int>(region.lozenges.size(), -1));
}

std::optional<VarId> variable_of(const Region& ambient, const Vertex& u) {
  if (ambient.is_plane()) return VarId{u};
  if (ambient.is_torus()) return VarId{ambient.canonicalize(u)};
  if (!ambient.contains(u) || ambient.is_boundary(u)) return std::nullopt;
  return VarId{ambient.canonicalize(u)};
}

LaurentPoly weight(const GroveRegion& region, const Forest& f, const Region& ambient) {
  std::vector<int> deg(region.vertices.size(), 0);
  for (const auto& [u, w] : forest_edges(region, f)) {
    ++deg[region.vertex_index(u)];
    ++deg[region.vertex_index(w)];
  }
  std::vector<Monomial::Factor> factors;
  for (std::size_t x = 0; x < region.vertices.size(); ++x) {
    const Vertex& u = region.vertices[x];
    int e = deg[x] - 2 + region.boundary_excess(u);
    if (e == 0) continue;
    if (auto id = variable_of(ambient, u)) factors.emplace_back(*id, e);
  }
  return LaurentPoly::monomial(Monomial::from_factors(std::move(factors)));
}

LaurentPoly grove_sum(const GroveRegion& region, const std::vector<Forest>& groves, const Region& ambient) {
  LaurentPoly total;
  for (const auto& f : groves) total += weight(region, f, ambient);
  return total;
}

// ---- cylinder ---------------------------------------------------------------

int StripGraph::vertex_index(const Vertex& canonical) const {
  auto it = std::lower_bound(vertices.begin(), vertices.end(), canonical);
  if (it == vertices.end() || *it != canonical) return -1;
  return static_cast<int>(it - vertices.begin());
}

std::pair<int, int> StripGraph::locate(const Vertex& u) const {
  if (u.sum() != 0 || u.i < 0 || u.i > m) throw OutOfRegion(to_string(u) + " is not in the strip");
  int lift = floor_div(u.j, 3 * n);
  Vertex c = u - lift * Vertex{0, 3 * n, -3 * n};
  return {vertex_index(c), lift};
}

StripGraph build_strip_graph(int n, int m) {
  Region cyl = Region::cylinder(n, m);  // validates n and m
  StripGraph s;
  s.n = n;
  s.m = m;
  s.vertices = cyl.fundamental_domain();
  std::sort(s.vertices.begin(), s.vertices.end());
  for (const auto& r : s.vertices) {
    if (color(r) != kRed) continue;
    if (r.i == 0 || r.i == m) s.forced_red.push_back(r);
    for (int axis = 0; axis < 3; ++axis) {
      Lozenge l = Lozenge::at(r, axis);
      bool inside = true;
      for (const auto& c : l.corners()) inside = inside && c.i >= 0 && c.i <= m;
      if (inside) s.lozenges.push_back(l);
    }
  }
  std::sort(s.lozenges.begin(), s.lozenges.end(),
            [](const Lozenge& x, const Lozenge& y) { return x.row_column() < y.row_column(); });
  return s;
}

namespace {

detail::SearchEdge strip_edge(const StripGraph& s, const Vertex& u, const Vertex& w) {
  auto [iu, lu] = s.locate(u);
  auto [iw, lw] = s.locate(w);
  return {iu, iw, lw - lu};
}

}  // namespace

std::vector<CylGrove> enumerate_cyl_groves(int n, int m) {
  StripGraph s = build_strip_graph(n, m);
  detail::SearchProblem p;
  p.num_vertices = static_cast<int>(s.vertices.size());
  for (const auto& l : s.lozenges) {
    std::array<int, 4> c{};
    auto corners = l.corners();
    for (int x = 0; x < 4; ++x) c[x] = s.locate(corners[x]).first;
    p.corners.push_back(c);
    std::array<detail::SearchEdge, 2> d{};
    for (int x = 0; x < 2; ++x) {
      auto [u, w] = l.edge(static_cast<Diagonal>(x));
      d[x] = strip_edge(s, u, w);
    }
    p.diagonals.push_back(d);
  }
  p.fixed.assign(s.lozenges.size(), -1);
  for (const auto& r : s.forced_red) p.forced.push_back(strip_edge(s, r, r + e23));
  p.mode = detail::SearchProblem::Mode::Sides;
  for (const auto& u : s.vertices) p.side.push_back(static_cast<std::uint8_t>((u.i == 0 ? 1 : 0) | (u.i == m ? 2 : 0)));
  p.allow_winding = true;

  Region cyl = s.region();
  std::vector<CylGrove> out;
  detail::search_diagonals(p, [&](const std::vector<std::uint8_t>& choice, const detail::RollbackUnionFind& uf) {
    CylGrove g;
    g.choice.reserve(choice.size());
    for (auto c : choice) g.choice.push_back(static_cast<Diagonal>(c));

    // h from the lifted bottom and top green vertices of each green component.
    std::map<int, std::vector<int>> bottoms, tops;
    for (std::size_t x = 0; x < s.vertices.size(); ++x) {
      const Vertex& u = s.vertices[x];
      if (uf.winds(static_cast<int>(x)))
        throw std::logic_error("cylinder grove with a component wrapping the cylinder at " + to_string(u));
      if (color(u) != kGreen || (u.i != 0 && u.i != m)) continue;
      auto [root, lift] = uf.find(static_cast<int>(x));
      int j = u.j + 3 * n * lift;
      (u.i == 0 ? bottoms : tops)[root].push_back(j);
    }
    std::optional<int> h;
    for (const auto& [root, js] : bottoms) {
      const auto& up = tops[root];
      if (js.size() != 1 || up.size() != 1)
        throw std::logic_error("green component without a unique bottom and top vertex");
      int diff = up[0] - js[0] + 2 * m;
      if (diff % 3 != 0 || diff < 0 || diff > 3 * m) throw std::logic_error("h out of range");
      if (h && *h != diff / 3) throw std::logic_error("green components disagree on h");
      h = diff / 3;
    }
    if (!h) throw std::logic_error("cylinder grove without green components");
    g.h = *h;

    std::vector<int> deg(s.vertices.size(), 0);
    for (std::size_t l = 0; l < s.lozenges.size(); ++l) {
      auto [u, w] = s.lozenges[l].edge(g.choice[l]);
      ++deg[s.locate(u).first];
      ++deg[s.locate(w).first];
    }
    std::vector<Monomial::Factor> factors;
    for (std::size_t x = 0; x < s.vertices.size(); ++x) {
      const Vertex& u = s.vertices[x];
      if (u.i == 0 || u.i == m || deg[x] == 2) continue;
      factors.emplace_back(VarId{cyl.canonicalize(u)}, deg[x] - 2);
    }
    g.weight = LaurentPoly::monomial(Monomial::from_factors(std::move(factors)));
    out.push_back(std::move(g));
  });
  return out;
}

std::vector<LaurentPoly> coefficients_J(int n, int m) {
  std::vector<LaurentPoly> J(static_cast<std::size_t>(m + 1));
  for (const auto& g : enumerate_cyl_groves(n, m)) J[static_cast<std::size_t>(g.h)] += g.weight;
  return J;
}

// ---- strip-restricted triangle groves -------------------------------------------

Forest reference_forest(const GroveRegion& region) {
  Forest f;
  for (const auto& l : region.lozenges) {
    bool above = true, below = true;
    for (const auto& c : l.corners()) {
      above = above && c.i >= region.apex.i;
      below = below && c.i <= region.apex.i;
    }
    bool green = (above && l.axis == 0) || (below && l.axis == 2);
    f.choice.push_back(green ? Diagonal::Green : Diagonal::RedBlue);
  }
  return f;
}

std::vector<bool> strip_mask(const GroveRegion& region, int m) {
  std::vector<bool> mask;
  for (const auto& l : region.lozenges) {
    bool inside = true;
    for (const auto& c : l.corners()) inside = inside && c.i >= 0 && c.i <= m;
    mask.push_back(inside);
  }
  return mask;
}

std::vector<Forest> enumerate_strip_groves(int n, int m, const Vertex& v, int t) {
  Region cyl = Region::cylinder(n, m);
  if (!cyl.contains(v) || cyl.is_boundary(v))
    throw OutOfRegion(to_string(v) + " is not an interior vertex of " + cyl.describe());
  GroveRegion region = build_region(v, t);
  Forest ref = reference_forest(region);
  auto mask = strip_mask(region, m);
  std::vector<int> fixed(region.lozenges.size(), -1);
  for (std::size_t l = 0; l < fixed.size(); ++l)
    if (!mask[l]) fixed[l] = static_cast<int>(ref.choice[l]);
  return run_triangle_search(region, fixed);
}

}  // namespace cube
