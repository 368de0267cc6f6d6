#ifndef FINMOD_MODAL_ALGEBRA_HPP
#define FINMOD_MODAL_ALGEBRA_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "general_frame.hpp"
#include "isomorphism.hpp"
#include "world_set.hpp"

namespace finmod {

/**
 * A finite Boolean algebra of sets with a normal diamond.
 *
 * Elements are kept in numeric order; diamond maps element indices to
 * element indices.
 */
class ModalAlgebra {
 public:
  ModalAlgebra(std::vector<WorldSet> elements, std::vector<std::size_t> diamond)
      : elements_(std::move(elements)), diamond_(std::move(diamond)) {
    if (elements_.empty())
      throw FormatError("modal algebra: no elements");
    if (!std::is_sorted(elements_.begin(), elements_.end()))
      throw FormatError("modal algebra: elements not in canonical order");
    if (diamond_.size() != elements_.size())
      throw FormatError("modal algebra: diamond is not total");
    for (auto d : diamond_)
      if (d >= elements_.size())
        throw FormatError("modal algebra: diamond leaves the algebra");
    const std::size_t n = elements_.front().universe();
    if (!elements_.front().empty() || !elements_.back().is_full())
      throw FormatError("modal algebra: missing bottom or top");
    for (const auto& e : elements_)
      if (e.universe() != n)
        throw FormatError("modal algebra: elements over different universes");
    // Atoms: nonzero elements with no nonzero element strictly below.
    for (std::size_t i = 1; i < elements_.size(); ++i) {
      bool minimal = true;
      for (auto a : atoms_)
        if (elements_[a].is_subset_of(elements_[i])) {
          minimal = false;
          break;
        }
      if (minimal) atoms_.push_back(i);
    }
    // Boolean: each element is exactly the union of the atoms below it and
    // every union of atoms is present.
    if (atoms_.size() >= 63 ||
        elements_.size() != (std::size_t{1} << atoms_.size()))
      throw FormatError("modal algebra: not a Boolean algebra of sets");
    for (std::size_t i = 0; i < atoms_.size(); ++i)
      for (std::size_t j = i + 1; j < atoms_.size(); ++j)
        if (elements_[atoms_[i]].intersects(elements_[atoms_[j]]))
          throw FormatError("modal algebra: not a Boolean algebra of sets");
    for (const auto& e : elements_) {
      WorldSet below(n);
      for (auto a : atoms_)
        if (elements_[a].is_subset_of(e)) below |= elements_[a];
      if (!(below == e))
        throw FormatError("modal algebra: not a Boolean algebra of sets");
    }
    if (!elements_[diamond_[0]].empty())
      throw FormatError("modal algebra: diamond of bottom is not bottom");
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      WorldSet via_atoms(n);
      for (auto a : atoms_)
        if (elements_[a].is_subset_of(elements_[i]))
          via_atoms |= elements_[diamond_[a]];
      if (!(via_atoms == elements_[diamond_[i]]))
        throw FormatError("modal algebra: diamond is not additive");
    }
  }

  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<WorldSet>& elements() const noexcept { return elements_; }
  const WorldSet& element(std::size_t i) const { return elements_[i]; }
  std::size_t diamond(std::size_t i) const { return diamond_[i]; }
  const std::vector<std::size_t>& diamond_table() const noexcept {
    return diamond_;
  }
  const std::vector<std::size_t>& atoms() const noexcept { return atoms_; }

  std::size_t index_of(const WorldSet& s) const {
    auto it = std::lower_bound(elements_.begin(), elements_.end(), s);
    if (it == elements_.end() || !(*it == s)) return elements_.size();
    return static_cast<std::size_t>(it - elements_.begin());
  }

  /// Atom i sees atom j iff atom i lies below diamond(atom j). The algebra is
  /// determined up to isomorphism by this frame.
  KripkeFrame atom_frame() const {
    std::vector<Edge> e;
    for (std::size_t i = 0; i < atoms_.size(); ++i)
      for (std::size_t j = 0; j < atoms_.size(); ++j)
        if (elements_[atoms_[i]].is_subset_of(
                elements_[diamond_[atoms_[j]]]))
          e.emplace_back(i, j);
    return KripkeFrame(atoms_.size(), std::move(e));
  }

 private:
  std::vector<WorldSet> elements_;
  std::vector<std::size_t> diamond_;
  std::vector<std::size_t> atoms_;
};

/// The algebra (V, R-preimage) of a general frame.
inline ModalAlgebra algebra_of(const GeneralFrame& g) {
  std::vector<std::size_t> diamond;
  diamond.reserve(g.members().size());
  for (const auto& m : g.members()) {
    std::size_t idx = g.index_of(g.base().preimage(m));
    if (idx == g.members().size())
      throw FormatError("algebra_of: preimage left the algebra");
    diamond.push_back(idx);
  }
  return ModalAlgebra(g.members(), std::move(diamond));
}

/// An isomorphism of modal algebras as an element-index map a1 -> a2.
struct AlgebraMap {
  std::vector<std::size_t> mapping;
};

/**
 * Searches for a Boolean isomorphism commuting with diamond. Such a map is a
 * bijection of atoms, so the search is an isomorphism search between atom
 * frames; the resulting element map is verified against every diamond value.
 */
inline std::optional<AlgebraMap> algebra_isomorphic(const ModalAlgebra& a1,
                                                    const ModalAlgebra& a2) {
  if (a1.size() != a2.size() || a1.atoms().size() != a2.atoms().size())
    return std::nullopt;
  auto atom_map = frames_isomorphic(a1.atom_frame(), a2.atom_frame());
  if (!atom_map) return std::nullopt;
  const auto& at1 = a1.atoms();
  const auto& at2 = a2.atoms();
  const std::size_t n2 = a2.element(0).universe();
  AlgebraMap m;
  m.mapping.resize(a1.size());
  for (std::size_t i = 0; i < a1.size(); ++i) {
    WorldSet img(n2);
    for (std::size_t k = 0; k < at1.size(); ++k)
      if (a1.element(at1[k]).is_subset_of(a1.element(i)))
        img |= a2.element(at2[atom_map->mapping[k]]);
    m.mapping[i] = a2.index_of(img);
    if (m.mapping[i] == a2.size()) return std::nullopt;
  }
  for (std::size_t i = 0; i < a1.size(); ++i)
    if (m.mapping[a1.diamond(i)] != a2.diamond(m.mapping[i]))
      return std::nullopt;
  return m;
}

}  // namespace finmod

#endif  // FINMOD_MODAL_ALGEBRA_HPP
