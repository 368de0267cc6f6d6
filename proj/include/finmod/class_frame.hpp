#ifndef FINMOD_CLASS_FRAME_HPP
#define FINMOD_CLASS_FRAME_HPP

#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "error.hpp"
#include "isomorphism.hpp"
#include "kripke.hpp"
#include "structure.hpp"
#include "submodels.hpp"

namespace finmod {

enum class RelationKind { sub, ext, quot };

inline std::string to_string(RelationKind k) {
  switch (k) {
    case RelationKind::sub:
      return "sub";
    case RelationKind::ext:
      return "ext";
    case RelationKind::quot:
      return "quot";
  }
  return "";
}

inline RelationKind relation_kind_from_string(const std::string& s) {
  if (s == "sub") return RelationKind::sub;
  if (s == "ext") return RelationKind::ext;
  if (s == "quot") return RelationKind::quot;
  throw PreconditionError("unknown relation kind '" + s +
                          "' (expected sub, ext or quot)");
}

/**
 * Iso-classes of a list of structures with a relation between classes.
 *
 * Accessibility runs from the bigger model to the smaller one for sub and
 * quot: [A] R [B] iff B is (isomorphic to) a submodel, resp. quotient, of A.
 * For ext it is the converse of sub.
 */
struct ClassFrame {
  std::vector<Structure> representatives;
  /// Input index of each representative.
  std::vector<std::size_t> origins;
  /// For every input structure, the index of its class.
  std::vector<std::size_t> class_of;
  std::vector<Edge> relation;
  RelationKind kind = RelationKind::sub;

  KripkeFrame as_kripke() const {
    return KripkeFrame(representatives.size(), relation);
  }
};

struct ClassFrameCaps {
  std::size_t submodel_cap = kDefaultSubmodelCap;
  std::size_t congruence_cap = kDefaultCongruenceCap;
};

/// Distinct iso-classes in order of first occurrence; representative is the
/// first member of each class.
inline std::pair<std::vector<std::size_t>, std::vector<std::size_t>>
iso_classes(const std::vector<Structure>& cs) {
  std::vector<std::size_t> origins;
  std::vector<std::size_t> class_of(cs.size());
  for (std::size_t i = 0; i < cs.size(); ++i) {
    std::size_t found = origins.size();
    for (std::size_t c = 0; c < origins.size(); ++c)
      if (isomorphic(cs[origins[c]], cs[i])) {
        found = c;
        break;
      }
    if (found == origins.size()) origins.push_back(i);
    class_of[i] = found;
  }
  return {origins, class_of};
}

/// True iff some submodel of `big` is isomorphic to `small`.
inline bool has_submodel_like(const Structure& big, const Structure& small,
                              std::size_t cap) {
  if (small.size() > big.size()) return false;
  for (const auto& u : submodels(big, cap))
    if (u.count() == small.size() &&
        isomorphic(induced_submodel(big, u), small))
      return true;
  return false;
}

/// True iff some quotient of `big` is isomorphic to `small`.
inline bool has_quotient_like(const Structure& big, const Structure& small,
                              std::size_t cap) {
  if (small.size() > big.size()) return false;
  for (const auto& theta : congruences(big, cap))
    if (block_count(theta) == small.size() &&
        isomorphic(quotient(big, theta), small))
      return true;
  return false;
}

/**
 * Builds the frame of iso-classes of `cs` under the requested relation.
 * The relation is decided by exhaustive submodel/congruence enumeration
 * followed by isomorphism tests.
 */
inline ClassFrame class_frame(const std::vector<Structure>& cs,
                              RelationKind kind, ClassFrameCaps caps = {}) {
  if (cs.empty()) throw PreconditionError("class_frame: empty class");
  for (const auto& s : cs)
    if (!(s.signature() == cs.front().signature()))
      throw PreconditionError("class_frame: structures have mixed signatures");
  for (const auto& s : cs) {
    std::size_t cap = kind == RelationKind::quot ? caps.congruence_cap
                                                 : caps.submodel_cap;
    if (s.size() > cap)
      throw CapExceeded("class_frame: structure of size " +
                        std::to_string(s.size()) + " exceeds cap " +
                        std::to_string(cap));
  }
  ClassFrame out;
  out.kind = kind;
  std::tie(out.origins, out.class_of) = iso_classes(cs);
  for (auto o : out.origins) out.representatives.push_back(cs[o]);

  const auto& reps = out.representatives;
  for (std::size_t a = 0; a < reps.size(); ++a)
    for (std::size_t b = 0; b < reps.size(); ++b) {
      bool related = false;
      if (a == b) {
        related = true;
      } else if (kind == RelationKind::sub) {
        related = has_submodel_like(reps[a], reps[b], caps.submodel_cap);
      } else if (kind == RelationKind::ext) {
        related = has_submodel_like(reps[b], reps[a], caps.submodel_cap);
      } else {
        related = has_quotient_like(reps[a], reps[b], caps.congruence_cap);
      }
      if (related) out.relation.emplace_back(a, b);
    }
  return out;
}

/// The submodels of s, each as a structure in its own right.
inline std::vector<Structure> submodel_structures(
    const Structure& s, std::size_t cap = kDefaultSubmodelCap) {
  std::vector<Structure> out;
  for (const auto& u : submodels(s, cap)) out.push_back(induced_submodel(s, u));
  return out;
}

/// The quotients of s, one per congruence.
inline std::vector<Structure> quotient_structures(
    const Structure& s, std::size_t cap = kDefaultCongruenceCap) {
  std::vector<Structure> out;
  for (const auto& theta : congruences(s, cap))
    out.push_back(quotient(s, theta));
  return out;
}

}  // namespace finmod

#endif  // FINMOD_CLASS_FRAME_HPP
