#ifndef FINMOD_KRIPKE_HPP
#define FINMOD_KRIPKE_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "world_set.hpp"

namespace finmod {

using World = std::size_t;
using Edge = std::pair<World, World>;

/**
 * A finite Kripke frame on worlds 0..n-1.
 *
 * Successor lists are always kept; frames of up to kDenseLimit worlds also
 * keep successor bit-sets, which the evaluation kernels use for R-preimage
 * and box in word-parallel form. Larger frames (the Shehtman source at
 * height 3 has 2^15 worlds) fall back to the lists.
 */
class KripkeFrame {
 public:
  static constexpr std::size_t kDenseLimit = 4096;

  KripkeFrame() = default;

  KripkeFrame(std::size_t n, std::vector<Edge> edges) : n_(n) {
    if (n_ == 0) throw PreconditionError("frame: worlds must be nonempty");
    succ_.resize(n_);
    pred_.resize(n_);
    for (const auto& [x, y] : edges) {
      if (x >= n_ || y >= n_)
        throw FormatError("frame: pair (" + std::to_string(x) + "," +
                          std::to_string(y) + ") outside " +
                          std::to_string(n_) + " worlds");
      succ_[x].push_back(y);
    }
    edge_count_ = 0;
    for (World x = 0; x < n_; ++x) {
      auto& s = succ_[x];
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
      edge_count_ += s.size();
      for (auto y : s) pred_[y].push_back(x);
    }
    if (n_ <= kDenseLimit) {
      dense_.reserve(n_);
      for (World x = 0; x < n_; ++x) {
        WorldSet row(n_);
        for (auto y : succ_[x]) row.set(y);
        dense_.push_back(std::move(row));
      }
    }
  }

  std::size_t size() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edge_count_; }
  bool dense() const noexcept { return !dense_.empty(); }

  const std::vector<World>& successors(World x) const { return succ_[x]; }
  const std::vector<World>& predecessors(World x) const { return pred_[x]; }

  bool has(World x, World y) const {
    if (dense()) return dense_[x].test(y);
    return std::binary_search(succ_[x].begin(), succ_[x].end(), y);
  }

  WorldSet successor_set(World x) const {
    if (dense()) return dense_[x];
    return WorldSet::from_points(n_, succ_[x]);
  }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (World x = 0; x < n_; ++x)
      for (auto y : succ_[x]) out.emplace_back(x, y);
    return out;
  }

  /// R-preimage: {x : some successor of x lies in a}.
  WorldSet preimage(const WorldSet& a) const {
    WorldSet out(n_);
    if (dense()) {
      for (World x = 0; x < n_; ++x)
        if (dense_[x].intersects(a)) out.set(x);
    } else {
      a.for_each([&](World y) {
        for (auto x : pred_[y]) out.set(x);
      });
    }
    return out;
  }

  /// {x : every successor of x lies in a}.
  WorldSet box(const WorldSet& a) const {
    WorldSet out(n_);
    if (dense()) {
      for (World x = 0; x < n_; ++x)
        if (dense_[x].is_subset_of(a)) out.set(x);
    } else {
      for (World x = 0; x < n_; ++x)
        if (std::all_of(succ_[x].begin(), succ_[x].end(),
                        [&](World y) { return a.test(y); }))
          out.set(x);
    }
    return out;
  }

  /// Worlds reachable from `from` in zero or more steps.
  WorldSet reachable(World from) const {
    return reachable_within(from, n_);
  }

  /// Worlds reachable from `from` in at most `steps` steps.
  WorldSet reachable_within(World from, std::size_t steps) const {
    WorldSet seen(n_);
    seen.set(from);
    std::vector<World> layer{from};
    for (std::size_t d = 0; d < steps && !layer.empty(); ++d) {
      std::vector<World> next;
      for (auto x : layer)
        for (auto y : succ_[x])
          if (!seen.test(y)) {
            seen.set(y);
            next.push_back(y);
          }
      layer = std::move(next);
    }
    return seen;
  }

  bool is_reflexive() const {
    for (World x = 0; x < n_; ++x)
      if (!has(x, x)) return false;
    return true;
  }

  bool is_transitive() const {
    for (World x = 0; x < n_; ++x)
      for (auto y : succ_[x])
        for (auto z : succ_[y])
          if (!has(x, z)) return false;
    return true;
  }

  friend bool operator==(const KripkeFrame& a, const KripkeFrame& b) {
    return a.n_ == b.n_ && a.succ_ == b.succ_;
  }

 private:
  std::size_t n_ = 0;
  std::size_t edge_count_ = 0;
  std::vector<std::vector<World>> succ_;
  std::vector<std::vector<World>> pred_;
  std::vector<WorldSet> dense_;
};

inline KripkeFrame reflexive_singleton() { return KripkeFrame(1, {{0, 0}}); }

inline KripkeFrame irreflexive_singleton() { return KripkeFrame(1, {}); }

/// A cluster: n worlds, every world sees every world.
inline KripkeFrame cluster(std::size_t n) {
  std::vector<Edge> e;
  for (World x = 0; x < n; ++x)
    for (World y = 0; y < n; ++y) e.emplace_back(x, y);
  return KripkeFrame(n, std::move(e));
}

/// Worlds 0 < 1 < ... < n-1 under the (optionally reflexive) strict order.
inline KripkeFrame chain(std::size_t n, bool reflexive) {
  std::vector<Edge> e;
  for (World x = 0; x < n; ++x)
    for (World y = x; y < n; ++y)
      if (y > x || reflexive) e.emplace_back(x, y);
  return KripkeFrame(n, std::move(e));
}

using TreeWord = std::vector<std::uint8_t>;

/// Words over {0..branching-1} of length < max_length in length-lexicographic
/// order. The position of a word in this list is its length-lex rank.
inline std::vector<TreeWord> length_lex_words(std::size_t branching,
                                          std::size_t max_length) {
  std::vector<TreeWord> out;
  if (max_length == 0) return out;
  out.push_back({});
  std::size_t level_begin = 0;
  for (std::size_t len = 1; len < max_length; ++len) {
    std::size_t level_end = out.size();
    for (std::size_t i = level_begin; i < level_end; ++i)
      for (std::size_t c = 0; c < branching; ++c) {
        TreeWord w = out[i];
        w.push_back(static_cast<std::uint8_t>(c));
        out.push_back(std::move(w));
      }
    level_begin = level_end;
  }
  return out;
}

inline bool is_prefix(const TreeWord& s, const TreeWord& t) {
  return s.size() <= t.size() && std::equal(s.begin(), s.end(), t.begin());
}

/// The tree (branching^{<depth}, prefix order), reflexive, worlds in
/// length-lex order so world 0 is the root.
inline KripkeFrame prefix_tree(std::size_t branching, std::size_t depth) {
  if (branching == 0 || depth == 0)
    throw PreconditionError("prefix_tree: branching and depth must be positive");
  auto words = length_lex_words(branching, depth);
  std::vector<Edge> e;
  for (World x = 0; x < words.size(); ++x)
    for (World y = 0; y < words.size(); ++y)
      if (is_prefix(words[x], words[y])) e.emplace_back(x, y);
  return KripkeFrame(words.size(), std::move(e));
}

/**
 * Lexicographic product: (a,x) sees (b,y) iff a sees b with a != b, or a = b
 * and x sees y in the second factor. World (a,x) has index a*|second| + x.
 */
inline KripkeFrame lex_product(const KripkeFrame& outer,
                               const KripkeFrame& inner) {
  const std::size_t m = inner.size();
  std::vector<Edge> e;
  for (World a = 0; a < outer.size(); ++a) {
    for (auto b : outer.successors(a)) {
      if (a == b) continue;
      for (World x = 0; x < m; ++x)
        for (World y = 0; y < m; ++y) e.emplace_back(a * m + x, b * m + y);
    }
    for (World x = 0; x < m; ++x)
      for (auto y : inner.successors(x)) e.emplace_back(a * m + x, a * m + y);
  }
  return KripkeFrame(outer.size() * m, std::move(e));
}

/// Disjoint union where every world of `lower` also sees every world of
/// `upper`; upper's worlds are shifted by lower.size().
inline KripkeFrame ordered_sum(const KripkeFrame& lower,
                               const KripkeFrame& upper) {
  const std::size_t off = lower.size();
  std::vector<Edge> e = lower.edges();
  for (auto [x, y] : upper.edges()) e.emplace_back(x + off, y + off);
  for (World x = 0; x < lower.size(); ++x)
    for (World y = 0; y < upper.size(); ++y) e.emplace_back(x, y + off);
  return KripkeFrame(off + upper.size(), std::move(e));
}

inline constexpr std::size_t kMaxPretreeWorlds = 1u << 16;

/**
 * The pre-tree Q_n: the n-ramified tree of height n with every node blown up
 * into an n-cluster. with_top appends a reflexive world seen by everything.
 */
inline KripkeFrame pretree_q(std::size_t n, bool with_top) {
  if (n == 0) throw PreconditionError("pretree_q: n must be positive");
  std::size_t nodes = 0, level = 1;
  for (std::size_t len = 0; len < n; ++len) {
    nodes += level;
    if (nodes * n > kMaxPretreeWorlds)
      throw CapExceeded("pretree_q: Q_" + std::to_string(n) + " exceeds " +
                        std::to_string(kMaxPretreeWorlds) + " worlds");
    level *= n;
  }
  KripkeFrame q = lex_product(prefix_tree(n, n), cluster(n));
  return with_top ? ordered_sum(q, reflexive_singleton()) : q;
}

inline constexpr std::size_t kMaxPowersetBase = 6;

/**
 * Subsets of a k-element set (world = bitmask, increasing; the empty set is
 * omitted when drop_empty). x sees y iff x is a subset of y, or a superset
 * when reversed.
 */
inline KripkeFrame powerset_frame(std::size_t k, bool drop_empty,
                                  bool reversed) {
  if (k == 0) throw PreconditionError("powerset_frame: k must be positive");
  if (k > kMaxPowersetBase)
    throw CapExceeded("powerset_frame: k = " + std::to_string(k) +
                      " exceeds cap " + std::to_string(kMaxPowersetBase));
  std::vector<std::uint64_t> masks;
  for (std::uint64_t m = drop_empty ? 1 : 0; m < (std::uint64_t{1} << k); ++m)
    masks.push_back(m);
  std::vector<Edge> e;
  for (World x = 0; x < masks.size(); ++x)
    for (World y = 0; y < masks.size(); ++y) {
      bool sub = (masks[x] & ~masks[y]) == 0;
      bool sup = (masks[y] & ~masks[x]) == 0;
      if (reversed ? sup : sub) e.emplace_back(x, y);
    }
  return KripkeFrame(masks.size(), std::move(e));
}

/// Mask of the subset that world w of powerset_frame(k, drop_empty, _) denotes.
inline std::uint64_t powerset_world_mask(World w, bool drop_empty) {
  return drop_empty ? w + 1 : w;
}

/**
 * Edges kept for drawing: x -> y (x != y) unless some z strictly between
 * them (x sees z, z sees y, and neither step goes back) exists. On preorders
 * this is the Hasse diagram with cluster edges kept.
 */
inline std::vector<Edge> drawing_edges(const KripkeFrame& f) {
  std::vector<Edge> out;
  for (World x = 0; x < f.size(); ++x)
    for (auto y : f.successors(x)) {
      if (x == y) continue;
      bool covered = false;
      for (auto z : f.successors(x)) {
        if (z == x || z == y) continue;
        if (f.has(z, y) && !f.has(z, x) && !f.has(y, z)) {
          covered = true;
          break;
        }
      }
      if (!covered) out.emplace_back(x, y);
    }
  return out;
}

}  // namespace finmod

#endif  // FINMOD_KRIPKE_HPP
