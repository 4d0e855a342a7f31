#pragma once

// Evolution of the cube recurrence
//   f_v(t) f_v(t-3) = sum over axes e of f_{v+e}(t-1) f_{v-e}(t-2)
// in the plane, the triangle, the cylinder and the torus. Values are
// memoized per (canonical vertex, time). The value type is pluggable: exact
// Laurent polynomials, or the support function of the Newton polytope when
// only degrees are needed.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cube/laurent.hpp"
#include "cube/lattice.hpp"

namespace cube {

/// Exact Laurent values. Variables listed in `assign` are replaced by
/// constants; the rest take `fill` when set, and stay symbolic otherwise.
struct LaurentAlgebra {
  using Value = LaurentPoly;

  Assignment assign;
  std::optional<Rational> fill;

  Value one() const { return LaurentPoly(1); }
  Value initial(const Vertex& canonical) const;
  Value step(const Value* const (&pairs)[3][2], const Value& divisor) const;
};

/// Support function of the Newton polytope evaluated at every sign vector
/// w in {-1,+1}^N. Exact for subtraction-free Laurent polynomials, which all
/// cube recurrence values are; the maximum entry is the l1 degree spread.
struct SupportAlgebra {
  using Value = std::vector<std::int64_t>;

  std::vector<Vertex> variables;  // sorted canonical vertices

  Value one() const { return Value(std::size_t{1} << variables.size(), 0); }
  Value initial(const Vertex& canonical) const;
  Value step(const Value* const (&pairs)[3][2], const Value& divisor) const;

  static std::int64_t spread(const Value& v);
};

template <class Algebra>
class BasicRecurrence {
 public:
  using Value = typename Algebra::Value;
  using Key = std::pair<Vertex, int>;

  explicit BasicRecurrence(Region region, Algebra algebra = {})
      : region_(std::move(region)), algebra_(std::move(algebra)) {}

  const Region& region() const { return region_; }
  const Algebra& algebra() const { return algebra_; }
  std::size_t cache_size() const { return cache_.size(); }

  /// f_v(t). Throws BadParity unless t >= color(v) and t = color(v) mod 3,
  /// and OutOfRegion for vertices outside a bounded region.
  const Value& value(const Vertex& v, int t) {
    check_parity(v, t);
    Vertex c = region_.canonicalize(v);
    if (auto it = cache_.find(Key{c, t}); it != cache_.end()) return it->second;
    Value out = compute(c, t);
    return cache_.emplace(Key{c, t}, std::move(out)).first->second;
  }

  /// Every defined value with t <= t_max on the region's fundamental domain
  /// (the whole triangle, one period of the cylinder, one torus cell),
  /// filled slice by slice in increasing t.
  std::map<Key, Value> evolve_slice(int t_max) {
    if (t_max < 0) throw std::invalid_argument("evolve_slice: t_max must be nonnegative");
    if (region_.is_plane()) throw std::invalid_argument("evolve_slice: the plane has no finite fundamental domain");
    std::vector<Vertex> cells = region_.fundamental_domain();
    std::map<Key, Value> out;
    for (int t = 0; t <= t_max; ++t)
      for (const auto& v : cells)
        if (color(v) % 3 == t % 3) out.emplace(Key{v, t}, value(v, t));
    return out;
  }

  enum class Mode { FixedVertex, Shifted };

  /// The first `count` terms of f_v(color+3l) (fixed) or
  /// f_{v+l g}(color+2ln) (shifted) on a cylinder.
  std::vector<Value> flatten_cylinder_sequence(const Vertex& v, Mode mode, int count) {
    if (!region_.is_cylinder()) throw std::invalid_argument("flatten_cylinder_sequence needs a cylinder region");
    if (!region_.contains(v)) throw OutOfRegion(to_string(v) + " is not in " + region_.describe());
    const auto& cyl = region_.cylinder();
    std::vector<Value> seq;
    seq.reserve(static_cast<std::size_t>(count));
    int eps = color(v);
    for (int l = 0; l < count; ++l) {
      if (mode == Mode::FixedVertex) seq.push_back(value(v, eps + 3 * l));
      else seq.push_back(value(v + l * cyl.g(), eps + 2 * l * cyl.n));
    }
    return seq;
  }

  void clear() { cache_.clear(); }

 private:
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      return VertexHash{}(k.first) * 31 + static_cast<std::size_t>(k.second);
    }
  };

  static void check_parity(const Vertex& v, int t) {
    if (t < color(v) || (t - color(v)) % 3 != 0)
      throw BadParity("f" + to_string(v).substr(1) + " is undefined at t=" + std::to_string(t) +
                      " (color " + std::to_string(color(v)) + ")");
  }

  Value compute(const Vertex& c, int t) {
    if (!region_.is_plane() && !region_.is_torus() && region_.is_boundary(c)) return algebra_.one();
    if (t < 3) return algebra_.initial(c);
    const Value* pairs[3][2];
    for (int a = 0; a < 3; ++a) {
      pairs[a][0] = &value(c + kAxes[a], t - 1);
      pairs[a][1] = &value(c - kAxes[a], t - 2);
    }
    const Value& divisor = value(c, t - 3);
    return algebra_.step(pairs, divisor);
  }

  Region region_;
  Algebra algebra_;
  std::unordered_map<Key, Value, KeyHash> cache_;
};

using Recurrence = BasicRecurrence<LaurentAlgebra>;
using DegreeRecurrence = BasicRecurrence<SupportAlgebra>;

std::string key_string(const Vertex& v, int t);  // "x[i,j,k]@t"

}  // namespace cube
