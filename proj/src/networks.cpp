#include "cube/networks.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#include "cube/json_io.hpp"

namespace cube {

int Network::vertex_node(const Vertex& canonical) const {
  auto it = std::lower_bound(vertex_index_.begin(), vertex_index_.end(), std::pair{canonical, -1});
  if (it == vertex_index_.end() || it->first != canonical) return -1;
  return it->second;
}

int Network::center_node(int lozenge) const {
  // Centers follow the lattice vertices in lozenge order.
  return static_cast<int>(vertex_index_.size()) + lozenge;
}

std::string Network::node_name(int node) const {
  const NetNode& x = nodes.at(static_cast<std::size_t>(node));
  if (!x.is_center()) return to_string(x.at);
  static const char* axes[] = {"e12", "e23", "e31"};
  const Lozenge& l = lozenges.at(static_cast<std::size_t>(x.lozenge));
  return "center(" + to_string(l.red) + "+" + axes[l.axis] + ")";
}

Lifted Network::lift(const Vertex& u) const {
  if (strip_n == 0) {
    int x = vertex_node(u);
    if (x < 0) throw OutOfRegion(to_string(u) + " is not a network vertex");
    return {x, 0};
  }
  int l = floor_div(u.j, 3 * strip_n);
  Vertex c = u - l * Vertex{0, 3 * strip_n, -3 * strip_n};
  int x = vertex_node(c);
  if (x < 0) throw OutOfRegion(to_string(u) + " is not a network vertex");
  return {x, l};
}

int Network::height(const Lifted& x) const {
  return -(nodes.at(static_cast<std::size_t>(x.node)).at.j + 3 * strip_n * x.lift);
}

void Network::finalize() {
  vertex_index_.clear();
  for (std::size_t x = 0; x < nodes.size(); ++x)
    if (!nodes[x].is_center()) vertex_index_.emplace_back(nodes[x].at, static_cast<int>(x));
  std::sort(vertex_index_.begin(), vertex_index_.end());
  out_.assign(nodes.size(), {});
  in_.assign(nodes.size(), {});
  for (std::size_t e = 0; e < edges.size(); ++e) {
    out_[static_cast<std::size_t>(edges[e].from)].push_back(static_cast<int>(e));
    in_[static_cast<std::size_t>(edges[e].to)].push_back(static_cast<int>(e));
  }
}

bool Network::is_acyclic() const {
  std::vector<int> indeg(nodes.size(), 0);
  for (const auto& e : edges) ++indeg[static_cast<std::size_t>(e.to)];
  std::queue<int> ready;
  for (std::size_t x = 0; x < nodes.size(); ++x)
    if (indeg[x] == 0) ready.push(static_cast<int>(x));
  std::size_t seen = 0;
  while (!ready.empty()) {
    int x = ready.front();
    ready.pop();
    ++seen;
    for (int e : out_edges(x))
      if (--indeg[static_cast<std::size_t>(edges[static_cast<std::size_t>(e)].to)] == 0)
        ready.push(edges[static_cast<std::size_t>(e)].to);
  }
  return seen == nodes.size();
}

std::string Network::to_text() const {
  std::ostringstream out;
  for (const auto& e : edges) {
    out << node_name(e.from) << ' ' << node_name(e.to) << ' ' << to_json(e.weight).dump();
    if (strip_n != 0) out << ' ' << e.winding;
    out << '\n';
  }
  return out.str();
}

namespace {

LaurentPoly var_or_one(const Region& ambient, const Vertex& u) {
  if (auto id = variable_of(ambient, u)) return LaurentPoly::var(*id);
  return LaurentPoly(1);
}

LaurentPoly lozenge_weight(const Region& ambient, const Lozenge& l) {
  return div_exact(var_or_one(ambient, l.a) * var_or_one(ambient, l.c),
                   var_or_one(ambient, l.b) * var_or_one(ambient, l.d));
}

}  // namespace

Network build_triangle_network(const GroveRegion& region, const Region& ambient) {
  Network net;
  for (const auto& u : region.vertices) net.nodes.push_back({u, -1});
  net.lozenges = region.lozenges;
  for (std::size_t l = 0; l < region.lozenges.size(); ++l) net.nodes.push_back({region.lozenges[l].red, static_cast<int>(l)});
  net.finalize();
  for (std::size_t l = 0; l < region.lozenges.size(); ++l) {
    const Lozenge& z = region.lozenges[l];
    int e = net.center_node(static_cast<int>(l));
    LaurentPoly w = lozenge_weight(ambient, z);
    net.edges.push_back({net.vertex_node(z.a), e, w, 0});
    net.edges.push_back({net.vertex_node(z.b), e, LaurentPoly(1), 0});
    net.edges.push_back({net.vertex_node(z.c), e, w, 0});
    net.edges.push_back({e, net.vertex_node(z.d), LaurentPoly(1), 0});
  }
  net.finalize();
  return net;
}

Network build_strip_network(int n, int m) {
  StripGraph s = build_strip_graph(n, m);
  Region cyl = s.region();
  Network net;
  net.strip_n = n;
  for (const auto& u : s.vertices) net.nodes.push_back({u, -1});
  net.lozenges = s.lozenges;
  for (std::size_t l = 0; l < s.lozenges.size(); ++l) net.nodes.push_back({s.lozenges[l].red, static_cast<int>(l)});
  net.finalize();
  for (std::size_t l = 0; l < s.lozenges.size(); ++l) {
    const Lozenge& z = s.lozenges[l];
    int e = net.center_node(static_cast<int>(l));  // the center sits in period 0 with its red vertex
    LaurentPoly w = lozenge_weight(cyl, z);
    for (const auto& [corner, weight] : {std::pair{z.a, w}, std::pair{z.b, LaurentPoly(1)}, std::pair{z.c, w}}) {
      Lifted x = net.lift(corner);
      net.edges.push_back({x.node, e, weight, -x.lift});
    }
    Lifted d = net.lift(z.d);
    net.edges.push_back({e, d.node, LaurentPoly(1), d.lift});
  }
  for (const auto& u : s.vertices) {
    if ((u.i != 0 && u.i != m) || color(u) != kRed) continue;
    Lifted src = net.lift(u + steps::e23);
    net.edges.push_back({src.node, net.vertex_node(u), LaurentPoly(1), -src.lift});
  }
  net.finalize();
  return net;
}

LaurentPoly path_weight(const Network& net, const Path& p) {
  LaurentPoly w(1);
  for (int e : p.edges) w *= net.edges.at(static_cast<std::size_t>(e)).weight;
  return w;
}

LaurentPoly rpath_weight(const Network& net, const RPath& p) {
  LaurentPoly w(1);
  for (const auto& path : p.paths) w *= path_weight(net, path);
  return w;
}

std::vector<RPath> enumerate_rpaths(const Network& net, const std::vector<Lifted>& starts,
                                    const std::vector<Lifted>& ends) {
  if (starts.size() != ends.size()) throw std::invalid_argument("enumerate_rpaths: starts and ends differ in length");
  std::vector<RPath> out;
  std::set<Lifted> used;
  RPath current;
  std::size_t r = starts.size();

  std::function<void(std::size_t)> next_path;
  std::function<void(std::size_t, Path&)> extend = [&](std::size_t k, Path& path) {
    Lifted here = path.nodes.back();
    if (here == ends[k]) {
      current.paths.push_back(path);
      next_path(k + 1);
      current.paths.pop_back();
      return;
    }
    for (int e : net.out_edges(here.node)) {
      const NetEdge& edge = net.edges[static_cast<std::size_t>(e)];
      Lifted to{edge.to, here.lift + edge.winding};
      if (used.count(to)) continue;
      if (net.strip_n != 0 && !net.nodes[static_cast<std::size_t>(to.node)].is_center() &&
          net.height(to) > net.height(ends[k]))
        continue;
      used.insert(to);
      path.nodes.push_back(to);
      path.edges.push_back(e);
      extend(k, path);
      path.edges.pop_back();
      path.nodes.pop_back();
      used.erase(to);
    }
  };
  next_path = [&](std::size_t k) {
    if (k == r) {
      out.push_back(current);
      return;
    }
    if (used.count(starts[k])) return;
    used.insert(starts[k]);
    Path path;
    path.nodes.push_back(starts[k]);
    extend(k, path);
    used.erase(starts[k]);
  };
  for (std::size_t k = 0; k < r; ++k) {
    for (std::size_t q = k + 1; q < r; ++q)
      if (starts[k] == starts[q] || ends[k] == ends[q]) return out;
  }
  next_path(0);
  return out;
}

std::vector<Cycle> simple_cycles(const Network& net) {
  std::vector<Cycle> out;
  std::vector<char> on_path(net.nodes.size(), 0);
  Cycle cur;
  int start = 0;
  std::function<void(int)> dfs = [&](int x) {
    for (int e : net.out_edges(x)) {
      int y = net.edges[static_cast<std::size_t>(e)].to;
      if (y == start) {
        cur.edges.push_back(e);
        out.push_back(cur);
        cur.edges.pop_back();
        continue;
      }
      if (y < start || on_path[static_cast<std::size_t>(y)]) continue;
      on_path[static_cast<std::size_t>(y)] = 1;
      cur.nodes.push_back(y);
      cur.edges.push_back(e);
      dfs(y);
      cur.edges.pop_back();
      cur.nodes.pop_back();
      on_path[static_cast<std::size_t>(y)] = 0;
    }
  };
  for (start = 0; start < static_cast<int>(net.nodes.size()); ++start) {
    cur = Cycle{{start}, {}};
    on_path[static_cast<std::size_t>(start)] = 1;
    dfs(start);
    on_path[static_cast<std::size_t>(start)] = 0;
  }
  return out;
}

std::vector<RCycle> enumerate_rcycles(const Network& net, int r) {
  if (r < 0) throw std::invalid_argument("enumerate_rcycles: r must be nonnegative");
  auto cycles = simple_cycles(net);
  std::size_t words = (net.nodes.size() + 63) / 64;
  std::vector<std::vector<std::uint64_t>> masks;
  for (const auto& c : cycles) {
    std::vector<std::uint64_t> m(words, 0);
    for (int x : c.nodes) m[static_cast<std::size_t>(x) / 64] |= std::uint64_t{1} << (x % 64);
    masks.push_back(std::move(m));
  }
  std::vector<RCycle> out;
  std::vector<std::size_t> chosen;
  std::vector<std::uint64_t> used(words, 0);
  std::function<void(std::size_t)> go = [&](std::size_t from) {
    if (chosen.size() == static_cast<std::size_t>(r)) {
      RCycle fam;
      for (auto c : chosen) fam.push_back(cycles[c]);
      out.push_back(std::move(fam));
      return;
    }
    for (std::size_t c = from; c < cycles.size(); ++c) {
      bool free = true;
      for (std::size_t w = 0; w < words && free; ++w) free = (used[w] & masks[c][w]) == 0;
      if (!free) continue;
      for (std::size_t w = 0; w < words; ++w) used[w] |= masks[c][w];
      chosen.push_back(c);
      go(c + 1);
      chosen.pop_back();
      for (std::size_t w = 0; w < words; ++w) used[w] &= ~masks[c][w];
    }
  };
  go(0);
  return out;
}

LaurentPoly rcycle_weight(const Network& net, const RCycle& c) {
  LaurentPoly w(1);
  for (const auto& cycle : c)
    for (int e : cycle.edges) w *= net.edges.at(static_cast<std::size_t>(e)).weight;
  return w;
}

std::vector<LaurentPoly> cycle_sums(const Network& net) {
  std::vector<LaurentPoly> out;
  for (int r = 0;; ++r) {
    auto fams = enumerate_rcycles(net, r);
    if (fams.empty()) break;
    LaurentPoly s;
    for (const auto& f : fams) s += rcycle_weight(net, f);
    out.push_back(std::move(s));
  }
  return out;
}

// ---- bijection ----------------------------------------------------------------

std::vector<std::pair<Vertex, Vertex>> oriented_edges(const GroveRegion& region, const RootedForest& f) {
  auto edges = forest_edges(region, f.forest);
  std::size_t V = region.vertices.size();
  std::vector<std::vector<std::pair<int, std::size_t>>> adj(V);
  for (std::size_t l = 0; l < edges.size(); ++l) {
    int u = region.vertex_index(edges[l].first), w = region.vertex_index(edges[l].second);
    adj[static_cast<std::size_t>(u)].emplace_back(w, l);
    adj[static_cast<std::size_t>(w)].emplace_back(u, l);
  }
  std::vector<int> owner(V, -1);
  std::vector<std::pair<Vertex, Vertex>> out(edges.size());
  std::vector<char> done(edges.size(), 0);
  for (std::size_t r = 0; r < f.roots.size(); ++r) {
    const Vertex& root = f.roots[r];
    if (!region.is_boundary(root)) throw NotRooted("root " + to_string(root) + " is not a boundary vertex");
    int x0 = region.vertex_index(root);
    if (owner[static_cast<std::size_t>(x0)] >= 0) throw NotRooted("two roots in one component at " + to_string(root));
    std::queue<int> q;
    q.push(x0);
    owner[static_cast<std::size_t>(x0)] = static_cast<int>(r);
    while (!q.empty()) {
      int x = q.front();
      q.pop();
      for (auto [y, l] : adj[static_cast<std::size_t>(x)]) {
        if (done[l]) continue;
        if (owner[static_cast<std::size_t>(y)] >= 0) throw NotRooted("component is not a tree or has two roots");
        owner[static_cast<std::size_t>(y)] = static_cast<int>(r);
        done[l] = 1;
        out[l] = {region.vertices[static_cast<std::size_t>(y)], region.vertices[static_cast<std::size_t>(x)]};
        q.push(y);
      }
    }
  }
  for (std::size_t x = 0; x < V; ++x)
    if (owner[x] < 0) throw NotRooted("component of " + to_string(region.vertices[x]) + " has no root");
  return out;
}

RPath phi(const GroveRegion& region, const Network& net, const RootedForest& f) {
  auto oriented = oriented_edges(region, f);
  std::map<int, int> next_edge;  // node -> chosen outgoing edge
  std::set<int> has_in;
  for (std::size_t l = 0; l < oriented.size(); ++l) {
    const Lozenge& z = region.lozenges[l];
    const Vertex& u = oriented[l].first;
    if (u == z.d) continue;
    int e = net.center_node(static_cast<int>(l));
    int from = net.vertex_node(u);
    for (int id : net.in_edges(e))
      if (net.edges[static_cast<std::size_t>(id)].from == from) next_edge[from] = id;
    next_edge[e] = net.out_edges(e).front();
    has_in.insert(e);
    has_in.insert(net.vertex_node(z.d));
  }
  RPath out;
  for (const auto& [start, first] : next_edge) {
    if (has_in.count(start)) continue;
    Path p;
    p.nodes.push_back({start, 0});
    int x = start;
    while (next_edge.count(x)) {
      int e = next_edge[x];
      p.edges.push_back(e);
      x = net.edges[static_cast<std::size_t>(e)].to;
      p.nodes.push_back({x, 0});
    }
    out.paths.push_back(std::move(p));
  }
  return out;
}

RootedForest phi_inv(const GroveRegion& region, const Network& net, const RPath& p) {
  std::map<int, int> entered_from;  // center node -> source node
  for (const auto& path : p.paths)
    for (int id : path.edges) {
      const NetEdge& e = net.edges.at(static_cast<std::size_t>(id));
      if (net.nodes[static_cast<std::size_t>(e.to)].is_center()) {
        if (!entered_from.emplace(e.to, e.from).second)
          throw std::invalid_argument("phi_inv: a lozenge center is entered twice");
      }
    }
  RootedForest f;
  std::set<Vertex> has_out;
  for (std::size_t l = 0; l < region.lozenges.size(); ++l) {
    const Lozenge& z = region.lozenges[l];
    auto it = entered_from.find(net.center_node(static_cast<int>(l)));
    Vertex from = z.d;
    bool ac_pair = false;
    if (it != entered_from.end()) {
      from = net.nodes[static_cast<std::size_t>(it->second)].at;
      ac_pair = from == z.a || from == z.c;
    }
    has_out.insert(from);
    // The a-c pair is the green diagonal except in type-e31 lozenges.
    bool green = ac_pair == (z.axis != 2);
    f.forest.choice.push_back(green ? Diagonal::Green : Diagonal::RedBlue);
  }
  for (const auto& u : region.vertices)
    if (!has_out.count(u)) f.roots.push_back(u);
  return f;
}

LaurentPoly empty_path_weight(const GroveRegion& region, const Region& ambient) {
  std::vector<Monomial::Factor> factors;
  for (int i = 1; i <= 2 * region.t - 1; ++i)
    if (auto id = variable_of(ambient, region.label('a', i))) factors.emplace_back(*id, i % 2 == 1 ? 1 : -1);
  return LaurentPoly::monomial(Monomial::from_factors(std::move(factors)));
}

std::vector<Vertex> canonical_roots(const GroveRegion& region) {
  std::vector<Vertex> out;
  for (int i = 1; i <= 2 * region.t - 1; ++i) out.push_back(region.label('c', i));
  for (int i = 1; i <= region.t - 1; ++i) out.push_back(region.label('b', i));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

std::vector<int> component_ids(const GroveRegion& region, const Forest& f) {
  std::vector<int> parent(region.vertices.size());
  for (std::size_t x = 0; x < parent.size(); ++x) parent[x] = static_cast<int>(x);
  std::function<int(int)> find = [&](int x) {
    return parent[static_cast<std::size_t>(x)] == x ? x : parent[static_cast<std::size_t>(x)] = find(parent[static_cast<std::size_t>(x)]);
  };
  for (const auto& [u, w] : forest_edges(region, f))
    parent[static_cast<std::size_t>(find(region.vertex_index(u)))] = find(region.vertex_index(w));
  std::vector<int> out(parent.size());
  for (std::size_t x = 0; x < out.size(); ++x) out[x] = find(static_cast<int>(x));
  return out;
}

}  // namespace

std::optional<Vertex> root_of(const GroveRegion& region, const Forest& f, const Vertex& u) {
  auto comp = component_ids(region, f);
  int target = comp[static_cast<std::size_t>(region.vertex_index(u))];
  std::optional<Vertex> found;
  for (const auto& r : canonical_roots(region)) {
    if (comp[static_cast<std::size_t>(region.vertex_index(r))] != target) continue;
    if (found) return std::nullopt;
    found = r;
  }
  return found;
}

bool has_canonical_roots(const GroveRegion& region, const Forest& f) {
  auto comp = component_ids(region, f);
  std::map<int, int> count;
  for (int c : comp) count[c] = 0;
  for (const auto& r : canonical_roots(region)) ++count[comp[static_cast<std::size_t>(region.vertex_index(r))]];
  for (const auto& [c, k] : count)
    if (k != 1) return false;
  return true;
}

RootedForest canonical_rooting(const GroveRegion& region, const Forest& grove) {
  auto comp = component_ids(region, grove);
  std::map<int, Vertex> root;
  // c labels take precedence over b labels; smaller indices first.
  for (char side : {'b', 'c'})
    for (int i = 2 * region.t - 1; i >= 1; --i) {
      Vertex u = region.label(side, i);
      root[comp[static_cast<std::size_t>(region.vertex_index(u))]] = u;
    }
  RootedForest out{grove, {}};
  std::set<int> comps(comp.begin(), comp.end());
  for (int c : comps) {
    auto it = root.find(c);
    if (it == root.end()) throw NotRooted("component without a b or c boundary vertex");
    out.roots.push_back(it->second);
  }
  std::sort(out.roots.begin(), out.roots.end());
  return out;
}

}  // namespace cube
