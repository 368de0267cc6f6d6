#ifndef FINMOD_MORPHISM_HPP
#define FINMOD_MORPHISM_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "isomorphism.hpp"
#include "kripke.hpp"
#include "structure.hpp"
#include "world_set.hpp"

namespace finmod {

/// A total map from source worlds to target worlds.
struct FrameMap {
  std::vector<World> mapping;

  friend bool operator==(const FrameMap&, const FrameMap&) = default;
};

/// The frame as a structure with one binary predicate R.
inline Structure frame_as_structure(const KripkeFrame& f) {
  std::vector<Tuple> pairs;
  for (auto [x, y] : f.edges())
    pairs.push_back({static_cast<Element>(x), static_cast<Element>(y)});
  return Structure(Signature({}, {{"R", 2}}, {}), f.size(), {},
                   {std::move(pairs)}, {});
}

/// An isomorphism of frames (bijection preserving R both ways), if any.
inline std::optional<FrameMap> frames_isomorphic(const KripkeFrame& a,
                                                 const KripkeFrame& b) {
  if (a.size() != b.size() || a.edge_count() != b.edge_count())
    return std::nullopt;
  auto iso = isomorphic(frame_as_structure(a), frame_as_structure(b));
  if (!iso) return std::nullopt;
  FrameMap m;
  for (auto v : iso->mapping) m.mapping.push_back(v);
  return m;
}

struct PMorphismCheck {
  enum class Kind { ok, out_of_range, not_surjective, forth, back };

  Kind kind = Kind::ok;
  /// Source world x (forth/back), or the offending source index.
  World x = 0;
  /// Source successor y for forth failures.
  World y = 0;
  /// Target world: the missed one (surjectivity), m(y) (forth), or the
  /// target successor of m(x) with no preimage among x's successors (back).
  World v = 0;

  bool ok() const noexcept { return kind == Kind::ok; }

  std::string describe() const {
    switch (kind) {
      case Kind::ok:
        return "ok";
      case Kind::out_of_range:
        return "map entry for world " + std::to_string(x) + " out of range";
      case Kind::not_surjective:
        return "target world " + std::to_string(v) + " has no preimage";
      case Kind::forth:
        return "forth fails: " + std::to_string(x) + " R " +
               std::to_string(y) + " but m(" + std::to_string(x) +
               ") does not see m(" + std::to_string(y) + ") = " +
               std::to_string(v);
      case Kind::back:
        return "back fails: m(" + std::to_string(x) + ") sees " +
               std::to_string(v) + " but no successor of " +
               std::to_string(x) + " maps there";
    }
    return "";
  }
};

/**
 * Checks that m is a surjective p-morphism: forth (xRy implies m(x)R'm(y))
 * and back (m(x)R'v implies xRy with m(y) = v for some y). The first
 * violation in world order is reported.
 */
inline PMorphismCheck check_pmorphism(const KripkeFrame& src,
                                      const KripkeFrame& tgt,
                                      const FrameMap& m) {
  PMorphismCheck r;
  if (m.mapping.size() != src.size()) {
    r.kind = PMorphismCheck::Kind::out_of_range;
    r.x = std::min(m.mapping.size(), src.size());
    return r;
  }
  for (World x = 0; x < src.size(); ++x)
    if (m.mapping[x] >= tgt.size()) {
      r.kind = PMorphismCheck::Kind::out_of_range;
      r.x = x;
      return r;
    }
  std::vector<bool> hit(tgt.size(), false);
  for (auto v : m.mapping) hit[v] = true;
  for (World v = 0; v < tgt.size(); ++v)
    if (!hit[v]) {
      r.kind = PMorphismCheck::Kind::not_surjective;
      r.v = v;
      return r;
    }
  std::vector<std::size_t> stamp(tgt.size(), 0);
  for (World x = 0; x < src.size(); ++x) {
    const World mx = m.mapping[x];
    for (auto y : src.successors(x)) {
      const World my = m.mapping[y];
      if (!tgt.has(mx, my)) {
        r.kind = PMorphismCheck::Kind::forth;
        r.x = x;
        r.y = y;
        r.v = my;
        return r;
      }
      stamp[my] = x + 1;
    }
    for (auto v : tgt.successors(mx))
      if (stamp[v] != x + 1) {
        r.kind = PMorphismCheck::Kind::back;
        r.x = x;
        r.v = v;
        return r;
      }
  }
  return r;
}

struct BisimulationCheck {
  bool ok = true;
  World x = 0;
  World x_prime = 0;
  World y = 0;

  std::string describe() const {
    if (ok) return "ok";
    return std::to_string(x) + " ~ " + std::to_string(x_prime) + " and " +
           std::to_string(x) + " R " + std::to_string(y) + ", but no world " +
           "equivalent to " + std::to_string(y) + " is seen by " +
           std::to_string(x_prime);
  }
};

/**
 * Checks that the partition is a bisimulation for R: whenever x ~ x' and
 * xRy, some y' ~ y has x'Ry'. Reports the first (x, x', y) in world order.
 */
inline BisimulationCheck check_bisimulation(const KripkeFrame& f,
                                            const BlockLabels& labels) {
  if (labels.size() != f.size())
    throw PreconditionError("check_bisimulation: partition has wrong length");
  const std::size_t blocks = block_count(labels);
  // Blocks reached from each world.
  std::vector<WorldSet> reach(f.size(), WorldSet(blocks));
  for (World x = 0; x < f.size(); ++x)
    for (auto y : f.successors(x)) reach[x].set(labels[y]);
  BisimulationCheck r;
  for (World x = 0; x < f.size(); ++x)
    for (World xp = 0; xp < f.size(); ++xp) {
      if (x == xp || labels[x] != labels[xp]) continue;
      if (reach[x].is_subset_of(reach[xp])) continue;
      for (auto y : f.successors(x))
        if (!reach[xp].test(labels[y])) {
          r.ok = false;
          r.x = x;
          r.x_prime = xp;
          r.y = y;
          return r;
        }
    }
  return r;
}

}  // namespace finmod

#endif  // FINMOD_MORPHISM_HPP
