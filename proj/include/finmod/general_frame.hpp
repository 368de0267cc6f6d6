#ifndef FINMOD_GENERAL_FRAME_HPP
#define FINMOD_GENERAL_FRAME_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "kripke.hpp"
#include "morphism.hpp"
#include "world_set.hpp"

namespace finmod {

/// Largest number of atoms (so 2^cap members) a materialized algebra may have.
inline constexpr std::size_t kDefaultAlgebraCap = 22;

/**
 * A Kripke frame with an admissible algebra of world-sets.
 *
 * A finite algebra closed under the Boolean operations is exactly the set of
 * unions of its atoms, so the frame stores the atom partition next to the
 * sorted member list. Closure under R-preimage reduces to preimages of atoms
 * because preimage distributes over unions.
 */
class GeneralFrame {
 public:
  /// Validates `members` as an admissible algebra over `base`.
  GeneralFrame(KripkeFrame base, std::vector<WorldSet> members,
               std::size_t cap = kDefaultAlgebraCap)
      : base_(std::move(base)) {
    const std::size_t n = base_.size();
    for (const auto& m : members)
      if (m.universe() != n)
        throw FormatError("general frame: algebra member over " +
                          std::to_string(m.universe()) + " worlds, frame has " +
                          std::to_string(n));
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    atoms_ = partition_by(n, members);
    const std::size_t b = block_count(atoms_);
    if (b > cap)
      throw CapExceeded("general frame: algebra with " + std::to_string(b) +
                        " atoms exceeds cap " + std::to_string(cap));
    if (members.size() != (std::size_t{1} << b))
      throw FormatError(
          "general frame: algebra is not closed under the Boolean operations "
          "(" + std::to_string(members.size()) + " members over " +
          std::to_string(b) + " atoms)");
    members_ = std::move(members);
    for (const auto& atom : atoms())
      if (!contains(base_.preimage(atom)))
        throw FormatError(
            "general frame: algebra is not closed under R-preimage");
  }

  /// The algebra whose atoms are the blocks of `atom_labels`. Throws
  /// FormatError unless that algebra is closed under R-preimage.
  static GeneralFrame from_atoms(KripkeFrame base, const BlockLabels& atom_labels,
                                 std::size_t cap = kDefaultAlgebraCap) {
    if (atom_labels.size() != base.size())
      throw PreconditionError("general frame: atom labels have wrong length");
    GeneralFrame g;
    g.base_ = std::move(base);
    g.atoms_ = normalize_labels(atom_labels);
    const std::size_t b = block_count(g.atoms_);
    if (b > cap)
      throw CapExceeded("general frame: algebra with " + std::to_string(b) +
                        " atoms exceeds cap " + std::to_string(cap));
    auto atom_sets = g.atoms();
    g.members_.reserve(std::size_t{1} << b);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << b); ++mask) {
      WorldSet m(g.base_.size());
      for (std::size_t i = 0; i < b; ++i)
        if ((mask >> i) & 1U) m |= atom_sets[i];
      g.members_.push_back(std::move(m));
    }
    std::sort(g.members_.begin(), g.members_.end());
    for (const auto& atom : atom_sets)
      if (!g.contains(g.base_.preimage(atom)))
        throw FormatError(
            "general frame: algebra is not closed under R-preimage");
    return g;
  }

  const KripkeFrame& base() const noexcept { return base_; }
  std::size_t size() const noexcept { return base_.size(); }
  const std::vector<WorldSet>& members() const noexcept { return members_; }
  const BlockLabels& atom_labels() const noexcept { return atoms_; }
  std::size_t atom_count() const { return block_count(atoms_); }

  std::vector<WorldSet> atoms() const {
    std::vector<WorldSet> out(atom_count(), WorldSet(size()));
    for (World x = 0; x < size(); ++x) out[atoms_[x]].set(x);
    return out;
  }

  bool contains(const WorldSet& s) const {
    return std::binary_search(members_.begin(), members_.end(), s);
  }

  /// Index of s in members(), or members().size() when absent.
  std::size_t index_of(const WorldSet& s) const {
    auto it = std::lower_bound(members_.begin(), members_.end(), s);
    if (it == members_.end() || !(*it == s)) return members_.size();
    return static_cast<std::size_t>(it - members_.begin());
  }

  /// Every world is its own atom.
  bool is_full() const { return atom_count() == size(); }

  /// Re-checks the algebra invariants directly on the member list: empty and
  /// full sets present, closed under complement, pairwise intersection and
  /// R-preimage. Quadratic in the number of members.
  bool verify_closure() const {
    const std::size_t n = size();
    if (!contains(WorldSet(n)) || !contains(WorldSet::full(n))) return false;
    for (std::size_t i = 0; i < members_.size(); ++i) {
      if (!contains(~members_[i])) return false;
      if (!contains(base_.preimage(members_[i]))) return false;
      for (std::size_t j = i + 1; j < members_.size(); ++j)
        if (!contains(members_[i] & members_[j])) return false;
    }
    return true;
  }

  /// Partition of worlds by which of `sets` they belong to.
  static BlockLabels partition_by(std::size_t n,
                                  const std::vector<WorldSet>& sets) {
    BlockLabels labels(n, 0);
    for (const auto& s : sets) {
      std::map<std::pair<std::size_t, bool>, std::size_t> next;
      BlockLabels refined(n);
      for (World x = 0; x < n; ++x)
        refined[x] =
            next.emplace(std::make_pair(labels[x], s.test(x)), next.size())
                .first->second;
      labels = std::move(refined);
    }
    return normalize_labels(labels);
  }

 private:
  GeneralFrame() = default;

  KripkeFrame base_;
  std::vector<WorldSet> members_;
  BlockLabels atoms_;
};

/// The Kripke frame with every subset admissible.
inline GeneralFrame full_general(const KripkeFrame& f,
                                 std::size_t cap = kDefaultAlgebraCap) {
  if (f.size() > cap)
    throw CapExceeded("full_general: powerset algebra over " +
                      std::to_string(f.size()) + " worlds exceeds cap " +
                      std::to_string(cap));
  BlockLabels atoms(f.size());
  for (World x = 0; x < f.size(); ++x) atoms[x] = x;
  return GeneralFrame::from_atoms(f, atoms, cap);
}

/**
 * Restricts g to the worlds reachable from w (reflexive-transitive closure).
 * New world i is the i-th smallest reachable world; members are intersected
 * with the new world set.
 */
inline GeneralFrame generated_subframe(const GeneralFrame& g, World w) {
  if (w >= g.size())
    throw PreconditionError("generated_subframe: world " + std::to_string(w) +
                            " out of range");
  const WorldSet up = g.base().reachable(w);
  const auto worlds = up.points();
  std::vector<World> index(g.size(), 0);
  for (std::size_t i = 0; i < worlds.size(); ++i) index[worlds[i]] = i;
  std::vector<Edge> e;
  for (auto x : worlds)
    for (auto y : g.base().successors(x)) e.emplace_back(index[x], index[y]);
  BlockLabels atoms(worlds.size());
  for (std::size_t i = 0; i < worlds.size(); ++i)
    atoms[i] = g.atom_labels()[worlds[i]];
  return GeneralFrame::from_atoms(KripkeFrame(worlds.size(), std::move(e)),
                                  atoms);
}

/**
 * Identifies worlds lying in exactly the same members (the atoms) and relates
 * classes by the maximal compatible relation: [x] R [y] iff x is in the
 * preimage of every member containing y. In a finite algebra the smallest
 * member containing y is its atom and preimage is monotone, so checking that
 * atom suffices. New world i is atom i.
 */
inline GeneralFrame refine(const GeneralFrame& g) {
  const auto atoms = g.atoms();
  const std::size_t b = atoms.size();
  std::vector<Edge> e;
  for (std::size_t j = 0; j < b; ++j) {
    const WorldSet pre = g.base().preimage(atoms[j]);
    for (std::size_t i = 0; i < b; ++i)
      if (pre.test(atoms[i].first())) e.emplace_back(i, j);
  }
  BlockLabels labels(b);
  for (std::size_t i = 0; i < b; ++i) labels[i] = i;
  return GeneralFrame::from_atoms(KripkeFrame(b, std::move(e)), labels);
}

/**
 * Collapses each block of `labels` into one world with the minimal relation
 * ([x] R [y] iff some x' ~ x sees some y' ~ y). The partition must refine the
 * algebra (each atom a union of blocks) and be a bisimulation.
 */
inline GeneralFrame quotient_frame(const GeneralFrame& g,
                                   const BlockLabels& labels) {
  if (labels.size() != g.size())
    throw PreconditionError("quotient_frame: partition has wrong length");
  const BlockLabels norm = normalize_labels(labels);
  const std::size_t m = block_count(norm);
  std::vector<std::size_t> atom_of_block(m, g.size());
  for (World x = 0; x < g.size(); ++x) {
    auto& a = atom_of_block[norm[x]];
    if (a == g.size())
      a = g.atom_labels()[x];
    else if (a != g.atom_labels()[x])
      throw PreconditionError(
          "quotient_frame: partition is not compatible with the algebra "
          "(block " + std::to_string(norm[x]) + " splits an admissible set)");
  }
  auto bisim = check_bisimulation(g.base(), norm);
  if (!bisim.ok)
    throw PreconditionError("quotient_frame: partition is not a bisimulation: " +
                            bisim.describe());
  std::vector<Edge> e;
  for (auto [x, y] : g.base().edges()) e.emplace_back(norm[x], norm[y]);
  return GeneralFrame::from_atoms(KripkeFrame(m, std::move(e)), atom_of_block);
}

/**
 * The smallest admissible algebra on g's base frame containing the
 * generators. Atoms are refined by the generators and then by preimages of
 * the current atoms until nothing splits.
 */
inline GeneralFrame subalgebra_generated(const GeneralFrame& g,
                                         const std::vector<WorldSet>& generators) {
  for (const auto& s : generators)
    if (s.universe() != g.size() || !g.contains(s))
      throw PreconditionError(
          "subalgebra_generated: generator is not a member of the ambient "
          "algebra");
  const std::size_t n = g.size();
  BlockLabels labels = GeneralFrame::partition_by(n, generators);
  while (true) {
    const std::size_t before = block_count(labels);
    std::vector<WorldSet> blocks(before, WorldSet(n));
    for (World x = 0; x < n; ++x) blocks[labels[x]].set(x);
    std::vector<WorldSet> pre;
    for (const auto& b : blocks) pre.push_back(g.base().preimage(b));
    pre.insert(pre.begin(), blocks.begin(), blocks.end());
    labels = GeneralFrame::partition_by(n, pre);
    if (block_count(labels) == before) break;
  }
  return GeneralFrame::from_atoms(g.base(), labels);
}

}  // namespace finmod

#endif  // FINMOD_GENERAL_FRAME_HPP
