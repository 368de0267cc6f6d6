#ifndef FINMOD_SUBMODELS_HPP
#define FINMOD_SUBMODELS_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "error.hpp"
#include "structure.hpp"
#include "world_set.hpp"

namespace finmod {

inline constexpr std::size_t kDefaultSubmodelCap = 20;
inline constexpr std::size_t kDefaultCongruenceCap = 12;

namespace detail {

/// Smallest closed superset of `seed` (constants added, functions applied to
/// fixpoint). Universe is at most 64, so sets are plain masks.
inline std::uint64_t closure_mask(const Structure& s, std::uint64_t seed) {
  std::uint64_t cur = seed;
  for (auto c : s.constants()) cur |= std::uint64_t{1} << c;
  const std::size_t nf = s.signature().functions().size();
  while (true) {
    std::uint64_t next = cur;
    std::vector<Element> members;
    for (std::size_t x = 0; x < s.size(); ++x)
      if ((cur >> x) & 1U) members.push_back(static_cast<Element>(x));
    if (members.empty()) return cur;
    for (std::size_t f = 0; f < nf; ++f) {
      const std::size_t k = s.arity(f);
      if (k == 1) {
        for (auto x : members) next |= std::uint64_t{1} << s.apply(f, x);
        continue;
      }
      std::vector<std::size_t> pos(k, 0);
      std::vector<Element> args(k);
      while (true) {
        for (std::size_t i = 0; i < k; ++i) args[i] = members[pos[i]];
        next |= std::uint64_t{1} << s.apply(f, args);
        std::size_t i = k;
        while (i > 0 && ++pos[i - 1] == members.size()) pos[--i] = 0;
        if (i == 0) break;
      }
    }
    if (next == cur) return cur;
    cur = next;
  }
}

}  // namespace detail

/**
 * All submodel universes of s: nonempty subsets containing every constant
 * and closed under every function. Enumerated with Ganter's NextClosure over
 * the closure operator above, then returned in numeric order.
 *
 * Refuses universes larger than `cap` rather than truncating.
 */
inline std::vector<WorldSet> submodels(const Structure& s,
                                       std::size_t cap = kDefaultSubmodelCap) {
  const std::size_t n = s.size();
  if (n > cap || n > 64)
    throw CapExceeded("submodels: universe of size " + std::to_string(n) +
                      " exceeds enumeration cap " +
                      std::to_string(std::min<std::size_t>(cap, 64)));
  std::vector<std::uint64_t> found;
  std::uint64_t current = detail::closure_mask(s, 0);
  found.push_back(current);
  while (true) {
    bool advanced = false;
    for (std::size_t i = n; i-- > 0;) {
      const std::uint64_t bit = std::uint64_t{1} << i;
      if (current & bit) continue;
      const std::uint64_t below = bit - 1;
      std::uint64_t next = detail::closure_mask(s, (current & below) | bit);
      if ((next & below) == (current & below)) {
        current = next;
        found.push_back(current);
        advanced = true;
        break;
      }
    }
    if (!advanced) break;
  }
  std::sort(found.begin(), found.end());
  std::vector<WorldSet> out;
  for (auto m : found)
    if (m != 0) out.push_back(WorldSet::from_mask(n, m));
  return out;
}

/// True iff every function table respects the partition.
inline bool is_congruence(const Structure& s, const BlockLabels& labels) {
  const std::size_t n = s.size();
  if (labels.size() != n) return false;
  for (std::size_t f = 0; f < s.signature().functions().size(); ++f) {
    const std::size_t k = s.arity(f);
    const auto& t = s.table(f);
    std::size_t entries = t.size();
    std::vector<Element> args(k);
    for (std::size_t idx = 0; idx < entries; ++idx) {
      decode_index(idx, n, args);
      // Changing one coordinate inside its block must not leave the block.
      for (std::size_t pos = 0; pos < k; ++pos) {
        const Element orig = args[pos];
        for (std::size_t y = 0; y < n; ++y) {
          if (labels[y] != labels[orig] || y == orig) continue;
          args[pos] = static_cast<Element>(y);
          if (labels[s.apply(f, args)] != labels[t[idx]]) return false;
        }
        args[pos] = orig;
      }
    }
  }
  return true;
}

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

/// Least congruence containing `start` and the pair (a,b).
inline BlockLabels congruence_closure(const Structure& s,
                                      const BlockLabels& start, std::size_t a,
                                      std::size_t b) {
  const std::size_t n = s.size();
  UnionFind uf(n);
  {
    std::vector<std::size_t> first(n, n);
    for (std::size_t x = 0; x < n; ++x) {
      if (first[start[x]] == n)
        first[start[x]] = x;
      else
        uf.unite(first[start[x]], x);
    }
  }
  uf.unite(a, b);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t f = 0; f < s.signature().functions().size(); ++f) {
      const std::size_t k = s.arity(f);
      const auto& t = s.table(f);
      if (k == 1) {
        for (std::size_t x = 0; x < n; ++x)
          changed |= uf.unite(t[x], t[uf.find(x)]);
        continue;
      }
      std::vector<Element> args(k);
      for (std::size_t idx = 0; idx < t.size(); ++idx) {
        decode_index(idx, n, args);
        for (std::size_t pos = 0; pos < k; ++pos) {
          const Element orig = args[pos];
          args[pos] = static_cast<Element>(uf.find(orig));
          changed |= uf.unite(t[idx], s.apply(f, args));
          args[pos] = orig;
        }
      }
    }
  }
  BlockLabels labels(n);
  for (std::size_t x = 0; x < n; ++x) labels[x] = uf.find(x);
  return normalize_labels(labels);
}

}  // namespace detail

/**
 * All congruences of s as normalized block labelings, sorted
 * lexicographically. Every congruence is a join of principal ones, so the
 * search closes the identity under joins with each principal congruence.
 */
inline std::vector<BlockLabels> congruences(
    const Structure& s, std::size_t cap = kDefaultCongruenceCap) {
  const std::size_t n = s.size();
  if (n > cap)
    throw CapExceeded("congruences: universe of size " + std::to_string(n) +
                      " exceeds enumeration cap " + std::to_string(cap));
  BlockLabels identity(n);
  std::iota(identity.begin(), identity.end(), std::size_t{0});

  std::vector<BlockLabels> principal;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      principal.push_back(detail::congruence_closure(s, identity, a, b));

  std::set<BlockLabels> seen{identity};
  std::vector<BlockLabels> frontier{identity};
  while (!frontier.empty()) {
    std::vector<BlockLabels> next;
    for (const auto& theta : frontier) {
      for (const auto& p : principal) {
        // Join theta with p by merging each p-block into theta.
        BlockLabels joined = theta;
        bool grows = false;
        for (std::size_t x = 0; x < n && !grows; ++x)
          for (std::size_t y = x + 1; y < n && !grows; ++y)
            if (p[x] == p[y] && theta[x] != theta[y]) grows = true;
        if (!grows) continue;
        for (std::size_t x = 0; x < n; ++x)
          for (std::size_t y = x + 1; y < n; ++y)
            if (p[x] == p[y] && joined[x] != joined[y])
              joined = detail::congruence_closure(s, joined, x, y);
        if (seen.insert(joined).second) next.push_back(std::move(joined));
      }
    }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

/**
 * Quotient of s by a congruence: elements are blocks in label order,
 * functions act blockwise, a predicate holds on a tuple of blocks iff it
 * holds on some tuple of representatives, constants go to their blocks.
 */
inline Structure quotient(const Structure& s, const BlockLabels& labels) {
  if (labels.size() != s.size())
    throw PreconditionError("quotient: partition has wrong length");
  if (!is_congruence(s, labels))
    throw PreconditionError("quotient: partition is not a congruence");
  const BlockLabels norm = normalize_labels(labels);
  const std::size_t m = block_count(norm);
  std::vector<std::size_t> rep(m, s.size());
  for (std::size_t x = 0; x < s.size(); ++x)
    if (rep[norm[x]] == s.size()) rep[norm[x]] = x;

  const Signature& sig = s.signature();
  std::vector<std::vector<Element>> tables;
  for (std::size_t f = 0; f < sig.functions().size(); ++f) {
    const std::size_t k = s.arity(f);
    const std::size_t entries = table_entries(m, k);
    std::vector<Element> t(entries);
    std::vector<Element> blocks(k), reps(k);
    for (std::size_t idx = 0; idx < entries; ++idx) {
      decode_index(idx, m, blocks);
      for (std::size_t i = 0; i < k; ++i)
        reps[i] = static_cast<Element>(rep[blocks[i]]);
      t[idx] = static_cast<Element>(norm[s.apply(f, reps)]);
    }
    tables.push_back(std::move(t));
  }
  std::vector<std::vector<Tuple>> exts;
  for (std::size_t p = 0; p < sig.predicates().size(); ++p) {
    std::vector<Tuple> e;
    for (auto t : s.extension(p)) {
      for (auto& x : t) x = static_cast<Element>(norm[x]);
      e.push_back(std::move(t));
    }
    exts.push_back(std::move(e));
  }
  std::vector<Element> cvals;
  for (auto c : s.constants()) cvals.push_back(static_cast<Element>(norm[c]));
  return Structure(sig, m, std::move(tables), std::move(exts),
                   std::move(cvals));
}

}  // namespace finmod

#endif  // FINMOD_SUBMODELS_HPP
