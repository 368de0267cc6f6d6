#ifndef FINMOD_SHEHTMAN_HPP
#define FINMOD_SHEHTMAN_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "error.hpp"
#include "kripke.hpp"
#include "morphism.hpp"

namespace finmod {

/// A p-morphism from a finite powerset frame onto a truncated binary tree
/// with a reflexive top.
struct ShehtmanWitness {
  /// (P({0..m}), subset); world = bitmask of the subset.
  KripkeFrame source;
  /// Binary tree of the given height (worlds in length-lex order, root 0)
  /// followed by the top world.
  KripkeFrame target;
  FrameMap map;
  /// Tree node assigned to each index of the base set; node i is the i-th
  /// word in length-lex order.
  std::vector<TreeWord> nodes;

  World top() const { return target.size() - 1; }
};

inline constexpr std::size_t kMaxShehtmanHeight = 3;

/**
 * Index i of the base set names tree node i (length-lex enumeration). A set
 * U goes to the greatest node of its image when the image is a nonempty
 * chain, the empty set goes to the root, and every other set goes to top.
 */
inline ShehtmanWitness shehtman_map(std::size_t height) {
  if (height == 0)
    throw PreconditionError("shehtman_map: height must be positive");
  if (height > kMaxShehtmanHeight)
    throw CapExceeded("shehtman_map: height " + std::to_string(height) +
                      " exceeds cap " + std::to_string(kMaxShehtmanHeight));
  ShehtmanWitness w;
  w.nodes = length_lex_words(2, height + 1);
  const std::size_t base = w.nodes.size();
  const std::uint64_t worlds = std::uint64_t{1} << base;

  std::vector<Edge> e;
  for (std::uint64_t x = 0; x < worlds; ++x) {
    // Enumerate supersets of x.
    const std::uint64_t free = (worlds - 1) & ~x;
    for (std::uint64_t add = free;; add = (add - 1) & free) {
      e.emplace_back(x, x | add);
      if (add == 0) break;
    }
  }
  w.source = KripkeFrame(worlds, std::move(e));
  w.target = ordered_sum(prefix_tree(2, height + 1), reflexive_singleton());

  const World top = w.target.size() - 1;
  w.map.mapping.resize(worlds);
  for (std::uint64_t u = 0; u < worlds; ++u) {
    if (u == 0) {
      w.map.mapping[u] = 0;
      continue;
    }
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < base; ++i)
      if ((u >> i) & 1U) members.push_back(i);
    bool is_chain = true;
    std::size_t greatest = members.front();
    for (std::size_t a = 0; a < members.size() && is_chain; ++a)
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        const auto& s = w.nodes[members[a]];
        const auto& t = w.nodes[members[b]];
        if (!is_prefix(s, t) && !is_prefix(t, s)) {
          is_chain = false;
          break;
        }
      }
    if (is_chain) {
      for (auto i : members)
        if (w.nodes[i].size() > w.nodes[greatest].size()) greatest = i;
      w.map.mapping[u] = greatest;
    } else {
      w.map.mapping[u] = top;
    }
  }
  return w;
}

}  // namespace finmod

#endif  // FINMOD_SHEHTMAN_HPP
