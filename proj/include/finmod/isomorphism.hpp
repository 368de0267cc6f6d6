#ifndef FINMOD_ISOMORPHISM_HPP
#define FINMOD_ISOMORPHISM_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "structure.hpp"

namespace finmod {

/// A bijection between the universes of two structures of equal size.
struct IsoMap {
  std::vector<Element> mapping;

  IsoMap inverse() const {
    IsoMap inv{std::vector<Element>(mapping.size())};
    for (std::size_t i = 0; i < mapping.size(); ++i)
      inv.mapping[mapping[i]] = static_cast<Element>(i);
    return inv;
  }

  friend bool operator==(const IsoMap&, const IsoMap&) = default;
};

/// Checks that m is a bijection preserving every function, predicate and
/// constant in both directions.
inline bool is_isomorphism(const Structure& a, const Structure& b,
                           const IsoMap& m) {
  if (!(a.signature() == b.signature()) || a.size() != b.size()) return false;
  const std::size_t n = a.size();
  if (m.mapping.size() != n) return false;
  std::vector<bool> hit(n, false);
  for (auto y : m.mapping) {
    if (y >= n || hit[y]) return false;
    hit[y] = true;
  }
  for (std::size_t c = 0; c < a.constants().size(); ++c)
    if (m.mapping[a.constant(c)] != b.constant(c)) return false;
  for (std::size_t f = 0; f < a.signature().functions().size(); ++f) {
    const std::size_t k = a.arity(f);
    std::vector<Element> args(k), mapped(k);
    for (std::size_t idx = 0; idx < a.table(f).size(); ++idx) {
      decode_index(idx, n, args);
      for (std::size_t i = 0; i < k; ++i) mapped[i] = m.mapping[args[i]];
      if (m.mapping[a.table(f)[idx]] != b.apply(f, mapped)) return false;
    }
  }
  for (std::size_t p = 0; p < a.signature().predicates().size(); ++p) {
    if (a.extension(p).size() != b.extension(p).size()) return false;
    for (auto t : a.extension(p)) {
      for (auto& x : t) x = m.mapping[x];
      if (!b.holds(p, t)) return false;
    }
  }
  return true;
}

namespace detail {

/**
 * Color refinement run on two structures at once so colors are comparable.
 * Colors start from constant membership, fixed points and predicate
 * incidence, then absorb the colors of unary images, unary preimages,
 * diagonal values of higher-arity functions and predicate neighbours.
 */
class JointRefinement {
 public:
  JointRefinement(const Structure& a, const Structure& b) : a_(a), b_(b) {
    using Key = std::vector<std::size_t>;
    std::map<Key, std::size_t> ids;
    colors_a_ = initial(a_, ids);
    colors_b_ = initial(b_, ids);
    std::size_t classes = ids.size();
    while (true) {
      std::map<Key, std::size_t> next_ids;
      auto na = refine(a_, colors_a_, next_ids);
      auto nb = refine(b_, colors_b_, next_ids);
      colors_a_ = std::move(na);
      colors_b_ = std::move(nb);
      if (next_ids.size() == classes) break;
      classes = next_ids.size();
    }
  }

  const std::vector<std::size_t>& colors_a() const { return colors_a_; }
  const std::vector<std::size_t>& colors_b() const { return colors_b_; }

  bool histograms_match() const {
    auto ha = colors_a_, hb = colors_b_;
    std::sort(ha.begin(), ha.end());
    std::sort(hb.begin(), hb.end());
    return ha == hb;
  }

 private:
  template <typename Ids>
  static std::vector<std::size_t> initial(const Structure& s, Ids& ids) {
    const std::size_t n = s.size();
    std::vector<std::vector<std::size_t>> keys(n);
    for (std::size_t x = 0; x < n; ++x) {
      auto& key = keys[x];
      for (auto c : s.constants()) key.push_back(c == x ? 1 : 0);
      for (std::size_t f = 0; f < s.signature().functions().size(); ++f) {
        std::vector<Element> diag(s.arity(f), static_cast<Element>(x));
        key.push_back(s.apply(f, diag) == x ? 1 : 0);
      }
      for (std::size_t p = 0; p < s.signature().predicates().size(); ++p) {
        const std::size_t k = s.signature().predicates()[p].arity;
        std::vector<std::size_t> per_pos(k, 0);
        for (const auto& t : s.extension(p))
          for (std::size_t i = 0; i < k; ++i)
            if (t[i] == x) ++per_pos[i];
        key.insert(key.end(), per_pos.begin(), per_pos.end());
      }
    }
    std::vector<std::size_t> colors(n);
    for (std::size_t x = 0; x < n; ++x)
      colors[x] = ids.emplace(keys[x], ids.size()).first->second;
    return colors;
  }

  template <typename Ids>
  static std::vector<std::size_t> refine(const Structure& s,
                                         const std::vector<std::size_t>& col,
                                         Ids& ids) {
    const std::size_t n = s.size();
    std::vector<std::vector<std::size_t>> keys(n);
    for (std::size_t x = 0; x < n; ++x) keys[x].push_back(col[x]);
    for (std::size_t f = 0; f < s.signature().functions().size(); ++f) {
      const std::size_t k = s.arity(f);
      if (k == 1) {
        std::vector<std::vector<std::size_t>> pre(n);
        for (std::size_t x = 0; x < n; ++x) {
          keys[x].push_back(col[s.apply(f, static_cast<Element>(x))]);
          pre[s.apply(f, static_cast<Element>(x))].push_back(col[x]);
        }
        for (std::size_t x = 0; x < n; ++x) {
          std::sort(pre[x].begin(), pre[x].end());
          keys[x].push_back(pre[x].size());
          keys[x].insert(keys[x].end(), pre[x].begin(), pre[x].end());
        }
      } else {
        for (std::size_t x = 0; x < n; ++x) {
          std::vector<Element> diag(k, static_cast<Element>(x));
          keys[x].push_back(col[s.apply(f, diag)]);
        }
      }
    }
    for (std::size_t p = 0; p < s.signature().predicates().size(); ++p) {
      const std::size_t k = s.signature().predicates()[p].arity;
      std::vector<std::vector<std::vector<std::size_t>>> seen(n);
      for (const auto& t : s.extension(p)) {
        std::vector<std::size_t> tc;
        for (auto e : t) tc.push_back(col[e]);
        for (std::size_t i = 0; i < k; ++i) {
          auto entry = tc;
          entry.push_back(i);
          seen[t[i]].push_back(std::move(entry));
        }
      }
      for (std::size_t x = 0; x < n; ++x) {
        std::sort(seen[x].begin(), seen[x].end());
        keys[x].push_back(seen[x].size());
        for (const auto& e : seen[x])
          keys[x].insert(keys[x].end(), e.begin(), e.end());
      }
    }
    std::vector<std::size_t> out(n);
    for (std::size_t x = 0; x < n; ++x)
      out[x] = ids.emplace(keys[x], ids.size()).first->second;
    return out;
  }

  const Structure& a_;
  const Structure& b_;
  std::vector<std::size_t> colors_a_;
  std::vector<std::size_t> colors_b_;
};

/// Backtracking search over color-compatible bijections.
class IsoSearch {
 public:
  IsoSearch(const Structure& a, const Structure& b,
            std::vector<std::size_t> colors_a,
            std::vector<std::size_t> colors_b)
      : a_(a),
        b_(b),
        ca_(std::move(colors_a)),
        cb_(std::move(colors_b)),
        n_(a.size()),
        map_(n_, kUnmapped),
        used_(n_, false) {
    // Rarest colors first; ties by index keep the search deterministic.
    std::map<std::size_t, std::size_t> freq;
    for (auto c : ca_) ++freq[c];
    order_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) order_[i] = i;
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t x, std::size_t y) {
                       return freq[ca_[x]] < freq[ca_[y]];
                     });
  }

  std::optional<IsoMap> run() {
    if (!extend(0)) return std::nullopt;
    IsoMap m;
    for (auto v : map_) m.mapping.push_back(static_cast<Element>(v));
    return m;
  }

 private:
  static constexpr std::size_t kUnmapped = static_cast<std::size_t>(-1);

  bool extend(std::size_t depth) {
    if (depth == n_) return true;
    const std::size_t x = order_[depth];
    for (std::size_t y = 0; y < n_; ++y) {
      if (used_[y] || cb_[y] != ca_[x]) continue;
      map_[x] = y;
      used_[y] = true;
      mapped_.push_back(x);
      if (consistent(x) && extend(depth + 1)) return true;
      mapped_.pop_back();
      used_[y] = false;
      map_[x] = kUnmapped;
    }
    return false;
  }

  /// Checks every function entry over mapped elements whose arguments or
  /// value involve the newly mapped element x, and every predicate tuple
  /// over mapped elements that mentions x.
  bool consistent(std::size_t x) {
    const auto& sig = a_.signature();
    for (std::size_t f = 0; f < sig.functions().size(); ++f) {
      const std::size_t k = a_.arity(f);
      if (!check_tuples(k, [&](const std::vector<Element>& args,
                               const std::vector<Element>& img, bool has_x) {
            const Element out_a = a_.apply(f, args);
            if (!has_x && out_a != x) return true;
            const Element out_b = b_.apply(f, img);
            if (map_[out_a] != kUnmapped) return map_[out_a] == out_b;
            // Unmapped image in a: its partner must not already be taken.
            return !used_[out_b] && ca_[out_a] == cb_[out_b];
          }))
        return false;
    }
    for (std::size_t p = 0; p < sig.predicates().size(); ++p) {
      const std::size_t k = sig.predicates()[p].arity;
      if (!check_tuples(k, [&](const std::vector<Element>& args,
                               const std::vector<Element>& img, bool has_x) {
            return !has_x || a_.holds(p, args) == b_.holds(p, img);
          }))
        return false;
    }
    return true;
  }

  template <typename Check>
  bool check_tuples(std::size_t k, Check&& check) {
    const std::size_t x = mapped_.back();
    const std::size_t m = mapped_.size();
    std::vector<std::size_t> pos(k, 0);
    std::vector<Element> args(k), img(k);
    while (true) {
      bool has_x = false;
      for (std::size_t i = 0; i < k; ++i) {
        args[i] = static_cast<Element>(mapped_[pos[i]]);
        img[i] = static_cast<Element>(map_[args[i]]);
        has_x |= args[i] == x;
      }
      if (!check(args, img, has_x)) return false;
      std::size_t i = k;
      while (i > 0 && ++pos[i - 1] == m) pos[--i] = 0;
      if (i == 0) return true;
    }
  }

  const Structure& a_;
  const Structure& b_;
  std::vector<std::size_t> ca_;
  std::vector<std::size_t> cb_;
  std::size_t n_;
  std::vector<std::size_t> map_;
  std::vector<bool> used_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> mapped_;
};

}  // namespace detail

/**
 * Finds an isomorphism a -> b, or nothing. Deterministic: candidates are
 * pruned by joint color refinement and tried in index order.
 */
inline std::optional<IsoMap> isomorphic(const Structure& a,
                                        const Structure& b) {
  if (!(a.signature() == b.signature()) || a.size() != b.size())
    return std::nullopt;
  for (std::size_t p = 0; p < a.signature().predicates().size(); ++p)
    if (a.extension(p).size() != b.extension(p).size()) return std::nullopt;
  detail::JointRefinement refinement(a, b);
  if (!refinement.histograms_match()) return std::nullopt;
  detail::IsoSearch search(a, b, refinement.colors_a(), refinement.colors_b());
  auto result = search.run();
  if (result && !is_isomorphism(a, b, *result)) return std::nullopt;
  return result;
}

}  // namespace finmod

#endif  // FINMOD_ISOMORPHISM_HPP
