#pragma once

// Backtracking over one-diagonal-per-lozenge choices with a rollback
// union-find. Shared by the triangle, strip and cylinder grove enumerators.
//
// Every union-find node carries an integer offset to its parent so that the
// cylinder enumerator can track how many periods apart two vertices of one
// component are; planar problems simply use offset 0 everywhere.

#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace cube::detail {

struct SearchEdge {
  int u = 0;
  int w = 0;
  int winding = 0;  // lift(w) - lift(u), in periods
};

struct SearchProblem {
  int num_vertices = 0;
  std::vector<std::array<int, 4>> corners;           // per lozenge
  std::vector<std::array<SearchEdge, 2>> diagonals;  // per lozenge, indexed by choice
  std::vector<int> fixed;                            // per lozenge: -1 free, else the forced choice
  std::vector<SearchEdge> forced;                    // edges outside any lozenge

  // Closed-component test. Mode Blocks: component must hold a whole target
  // block (or, when require_block, at least one). Mode Sides: component must
  // touch both flagged sides.
  enum class Mode { Blocks, Sides } mode = Mode::Blocks;
  std::vector<int> block;       // per vertex, -1 for none
  std::vector<int> block_size;  // per block id
  bool require_block = true;
  std::vector<std::uint8_t> side;  // per vertex, bit 0 = first side, bit 1 = second side

  bool allow_winding = false;  // cylinder only: a loop around the period is not a cycle
};

class RollbackUnionFind {
 public:
  explicit RollbackUnionFind(const SearchProblem& p) : p_(p) {
    int n = p.num_vertices;
    parent_.resize(n);
    for (int x = 0; x < n; ++x) parent_[x] = x;
    rank_.assign(n, 0);
    offset_.assign(n, 0);
    open_.assign(n, 0);
    block_.assign(n, -1);
    members_.assign(n, 0);
    side_.assign(n, 0);
    winds_.assign(n, 0);
    for (int x = 0; x < n; ++x) {
      if (p.mode == SearchProblem::Mode::Blocks && p.block[x] >= 0) {
        block_[x] = p.block[x];
        members_[x] = 1;
      }
      if (p.mode == SearchProblem::Mode::Sides) side_[x] = p.side[x];
    }
    for (const auto& c : p.corners)
      for (int x : c) ++open_[x];
  }

  /// Root and lift of x relative to its root.
  std::pair<int, int> find(int x) const {
    int off = 0;
    while (parent_[x] != x) {
      off += offset_[x];
      x = parent_[x];
    }
    return {x, off};
  }

  std::size_t mark() const { return log_.size(); }
  void rollback(std::size_t to) {
    while (log_.size() > to) {
      *log_.back().first = log_.back().second;
      log_.pop_back();
    }
  }

  void release_corner(int x) {
    int r = find(x).first;
    set(open_[r], open_[r] - 1);
  }

  /// Adds an edge; false when it closes a cycle or merges two target blocks.
  bool link(const SearchEdge& e) {
    auto [ru, ou] = find(e.u);
    auto [rw, ow] = find(e.w);
    if (ru == rw) {
      if (!p_.allow_winding || ou + e.winding == ow) return false;
      set(winds_[ru], 1);
      return true;
    }
    if (block_[ru] >= 0 && block_[rw] >= 0 && block_[ru] != block_[rw]) return false;
    // Attach rw below ru: lift(rw) = lift(ru) + ou + winding - ow.
    int rel = ou + e.winding - ow;
    if (rank_[ru] < rank_[rw]) {
      std::swap(ru, rw);
      rel = -rel;
    }
    set(parent_[rw], ru);
    set(offset_[rw], rel);
    if (rank_[ru] == rank_[rw]) set(rank_[ru], rank_[ru] + 1);
    set(open_[ru], open_[ru] + open_[rw]);
    if (block_[ru] < 0) set(block_[ru], block_[rw]);
    set(members_[ru], members_[ru] + members_[rw]);
    set(side_[ru], side_[ru] | side_[rw]);
    set(winds_[ru], winds_[ru] | winds_[rw]);
    return true;
  }

  /// False when x's component has no undecided lozenges left but is not
  /// acceptable as a final component.
  bool closed_ok(int x) const {
    int r = find(x).first;
    if (open_[r] > 0) return true;
    if (p_.mode == SearchProblem::Mode::Sides) return side_[r] == 3;
    if (block_[r] < 0) return !p_.require_block;
    return members_[r] == p_.block_size[block_[r]];
  }

  bool winds(int x) const { return winds_[find(x).first] != 0; }

 private:
  void set(int& slot, int value) {
    log_.emplace_back(&slot, slot);
    slot = value;
  }

  const SearchProblem& p_;
  std::vector<int> parent_, rank_, offset_, open_, block_, members_, side_, winds_;
  std::vector<std::pair<int*, int>> log_;
};

/// Calls visit(choices, uf) for every admissible complete choice vector.
inline void search_diagonals(const SearchProblem& p,
                             const std::function<void(const std::vector<std::uint8_t>&,
                                                      const RollbackUnionFind&)>& visit) {
  std::size_t L = p.corners.size();
  if (p.diagonals.size() != L || p.fixed.size() != L) throw std::logic_error("search_diagonals: inconsistent problem");
  RollbackUnionFind uf(p);
  for (const auto& e : p.forced)
    if (!uf.link(e)) return;
  std::vector<std::uint8_t> choice(L, 0);

  // Fixed lozenges first so the free search starts from their components.
  std::vector<std::size_t> order;
  for (std::size_t l = 0; l < L; ++l)
    if (p.fixed[l] >= 0) order.push_back(l);
  for (std::size_t l = 0; l < L; ++l)
    if (p.fixed[l] < 0) order.push_back(l);

  for (int x = 0; x < p.num_vertices; ++x)
    if (!uf.closed_ok(x)) return;

  std::function<void(std::size_t)> go = [&](std::size_t depth) {
    if (depth == L) {
      visit(choice, uf);
      return;
    }
    std::size_t l = order[depth];
    int lo = p.fixed[l] >= 0 ? p.fixed[l] : 0;
    int hi = p.fixed[l] >= 0 ? p.fixed[l] : 1;
    for (int c = lo; c <= hi; ++c) {
      std::size_t m = uf.mark();
      for (int x : p.corners[l]) uf.release_corner(x);
      bool ok = uf.link(p.diagonals[l][c]);
      if (ok)
        for (int x : p.corners[l]) ok = ok && uf.closed_ok(x);
      if (ok) {
        choice[l] = static_cast<std::uint8_t>(c);
        go(depth + 1);
      }
      uf.rollback(m);
    }
  };
  go(0);
}

}  // namespace cube::detail
