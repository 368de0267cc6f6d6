// Brute-force reference implementations used to cross-check the library.
// They share no code with it beyond the data types.
#ifndef FINMOD_TESTS_ORACLES_HPP
#define FINMOD_TESTS_ORACLES_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "finmod/formula.hpp"
#include "finmod/kripke.hpp"
#include "finmod/structure.hpp"

namespace oracle {

using finmod::Connective;
using finmod::Formula;
using finmod::KripkeFrame;
using finmod::Structure;

inline std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

/// Subsets (as bitmasks) closed under every function and containing every
/// constant; the empty set is excluded.
inline std::vector<std::uint64_t> submodel_masks(const Structure& s) {
  const std::size_t n = s.size();
  std::vector<std::uint64_t> out;
  for (std::uint64_t m = 1; m < (std::uint64_t{1} << n); ++m) {
    bool ok = true;
    for (auto c : s.constants()) ok = ok && ((m >> c) & 1U);
    for (std::size_t f = 0; ok && f < s.signature().functions().size(); ++f) {
      const std::size_t k = s.signature().functions()[f].arity;
      std::vector<std::uint32_t> args(k, 0);
      std::vector<std::size_t> members;
      for (std::size_t x = 0; x < n; ++x)
        if ((m >> x) & 1U) members.push_back(x);
      std::vector<std::size_t> pos(k, 0);
      while (ok) {
        for (std::size_t i = 0; i < k; ++i) args[i] = members[pos[i]];
        if (!((m >> s.apply(f, args)) & 1U)) ok = false;
        std::size_t i = 0;
        while (i < k && ++pos[i] == members.size()) pos[i++] = 0;
        if (i == k) break;
      }
    }
    if (ok) out.push_back(m);
  }
  return out;
}

/// All set partitions of {0..n-1} as normalized labels, by recursion on
/// the last element.
inline std::vector<std::vector<std::size_t>> partitions(std::size_t n) {
  if (n == 0) return {{}};
  std::vector<std::vector<std::size_t>> out;
  for (auto p : partitions(n - 1)) {
    std::size_t blocks = p.empty() ? 0 : *std::max_element(p.begin(), p.end()) + 1;
    for (std::size_t b = 0; b <= blocks; ++b) {
      auto q = p;
      q.push_back(b);
      out.push_back(q);
    }
  }
  return out;
}

inline std::uint64_t bell(std::size_t n) {
  std::vector<std::vector<std::uint64_t>> t(n + 1);
  t[0] = {1};
  for (std::size_t i = 1; i <= n; ++i) {
    t[i] = {t[i - 1].back()};
    for (auto x : t[i - 1]) t[i].push_back(t[i].back() + x);
  }
  return t[n][0];
}

/// Function-compatible partitions, checking every pair of argument tuples.
inline std::set<std::vector<std::size_t>> congruences(const Structure& s) {
  const std::size_t n = s.size();
  std::set<std::vector<std::size_t>> out;
  for (const auto& p : partitions(n)) {
    bool ok = true;
    for (std::size_t f = 0; ok && f < s.signature().functions().size(); ++f) {
      const std::size_t k = s.signature().functions()[f].arity;
      const std::size_t total = ipow(n, k);
      for (std::size_t a = 0; ok && a < total; ++a)
        for (std::size_t b = 0; ok && b < total; ++b) {
          std::vector<std::uint32_t> xa(k), xb(k);
          bool related = true;
          for (std::size_t i = 0, ra = a, rb = b; i < k; ++i, ra /= n, rb /= n) {
            xa[i] = ra % n;
            xb[i] = rb % n;
            related = related && p[xa[i]] == p[xb[i]];
          }
          if (related && p[s.apply(f, xa)] != p[s.apply(f, xb)]) ok = false;
        }
    }
    if (ok) out.insert(p);
  }
  return out;
}

/// Isomorphism by trying every bijection.
inline bool isomorphic(const Structure& a, const Structure& b) {
  if (a.size() != b.size()) return false;
  const std::size_t n = a.size();
  std::vector<std::uint32_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (std::size_t c = 0; ok && c < a.constants().size(); ++c)
      ok = perm[a.constant(c)] == b.constant(c);
    for (std::size_t f = 0; ok && f < a.signature().functions().size(); ++f) {
      const std::size_t k = a.signature().functions()[f].arity;
      const std::size_t total = ipow(n, k);
      for (std::size_t idx = 0; ok && idx < total; ++idx) {
        std::vector<std::uint32_t> x(k), y(k);
        for (std::size_t i = 0, r = idx; i < k; ++i, r /= n) {
          x[i] = r % n;
          y[i] = perm[x[i]];
        }
        ok = perm[a.apply(f, x)] == b.apply(f, y);
      }
    }
    for (std::size_t p = 0; ok && p < a.signature().predicates().size(); ++p) {
      std::set<std::vector<std::uint32_t>> mapped;
      for (const auto& t : a.extension(p)) {
        std::vector<std::uint32_t> u;
        for (auto e : t) u.push_back(perm[e]);
        mapped.insert(u);
      }
      std::set<std::vector<std::uint32_t>> target(b.extension(p).begin(),
                                                  b.extension(p).end());
      ok = mapped == target;
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

/// Frame isomorphism by trying every bijection.
inline bool frames_isomorphic(const KripkeFrame& a, const KripkeFrame& b) {
  if (a.size() != b.size() || a.edge_count() != b.edge_count()) return false;
  std::vector<std::size_t> perm(a.size());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (std::size_t x = 0; ok && x < a.size(); ++x)
      for (std::size_t y = 0; ok && y < a.size(); ++y)
        ok = a.has(x, y) == b.has(perm[x], perm[y]);
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

/// Truth of phi at world w; valuation maps a variable to a bitmask.
inline bool holds(const KripkeFrame& f, const std::map<std::string, std::uint64_t>& v,
                  const Formula& phi, std::size_t w) {
  switch (phi.op()) {
    case Connective::variable:
      return (v.at(phi.name()) >> w) & 1U;
    case Connective::falsum:
      return false;
    case Connective::verum:
      return true;
    case Connective::negation:
      return !holds(f, v, phi.lhs(), w);
    case Connective::conjunction:
      return holds(f, v, phi.lhs(), w) && holds(f, v, phi.rhs(), w);
    case Connective::disjunction:
      return holds(f, v, phi.lhs(), w) || holds(f, v, phi.rhs(), w);
    case Connective::implication:
      return !holds(f, v, phi.lhs(), w) || holds(f, v, phi.rhs(), w);
    case Connective::biconditional:
      return holds(f, v, phi.lhs(), w) == holds(f, v, phi.rhs(), w);
    case Connective::diamond:
      for (std::size_t y = 0; y < f.size(); ++y)
        if (f.has(w, y) && holds(f, v, phi.lhs(), y)) return true;
      return false;
    case Connective::box:
      for (std::size_t y = 0; y < f.size(); ++y)
        if (f.has(w, y) && !holds(f, v, phi.lhs(), y)) return false;
      return true;
  }
  return false;
}

/// Validity over the full powerset, per world and per assignment.
inline bool valid(const KripkeFrame& f, const Formula& phi) {
  const auto vars = phi.variables();
  const std::size_t n = f.size();
  const std::uint64_t sets = std::uint64_t{1} << n;
  std::vector<std::uint64_t> choice(vars.size(), 0);
  while (true) {
    std::map<std::string, std::uint64_t> v;
    for (std::size_t i = 0; i < vars.size(); ++i) v[vars[i]] = choice[i];
    for (std::size_t w = 0; w < n; ++w)
      if (!holds(f, v, phi, w)) return false;
    std::size_t i = 0;
    while (i < vars.size() && ++choice[i] == sets) choice[i++] = 0;
    if (i == vars.size()) return true;
  }
}

inline KripkeFrame random_frame(std::mt19937_64& rng, std::size_t n, unsigned density) {
  std::vector<finmod::Edge> e;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (rng() % density == 0) e.emplace_back(x, y);
  return KripkeFrame(n, e);
}

/// Random formula over the given variables with at most `depth` nested
/// connectives.
inline Formula random_formula(std::mt19937_64& rng, const std::vector<std::string>& vars,
                              int depth) {
  if (depth == 0 || rng() % 4 == 0) {
    const auto r = rng() % (vars.size() + 2);
    if (r == vars.size()) return Formula::falsum();
    if (r == vars.size() + 1) return Formula::verum();
    return Formula::var(vars[r]);
  }
  auto sub = [&] { return random_formula(rng, vars, depth - 1); };
  switch (rng() % 9) {
    case 0: return Formula::neg(sub());
    case 1: return Formula::dia(sub());
    case 2: return Formula::box(sub());
    case 3: return Formula::conj(sub(), sub());
    case 4: return Formula::disj(sub(), sub());
    case 5: return Formula::impl(sub(), sub());
    case 6: return Formula::iff(sub(), sub());
    case 7: return Formula::dia(Formula::neg(sub()));
    default: return Formula::box(Formula::impl(sub(), sub()));
  }
}

/// Random structure: one unary function F, one binary function G when
/// `binary`, one binary predicate P when `predicate`, constants as named.
inline Structure random_structure(std::mt19937_64& rng, std::size_t n, bool binary,
                                  bool predicate,
                                  const std::vector<std::string>& constants = {}) {
  std::vector<finmod::Symbol> fs = {{"F", 1}};
  if (binary) fs.push_back({"G", 2});
  std::vector<finmod::Symbol> ps;
  if (predicate) ps.push_back({"P", 2});
  std::vector<std::vector<finmod::Element>> tables;
  for (const auto& f : fs) {
    std::vector<finmod::Element> t(ipow(n, f.arity));
    for (auto& x : t) x = static_cast<finmod::Element>(rng() % n);
    tables.push_back(t);
  }
  std::vector<std::vector<finmod::Tuple>> exts;
  if (predicate) {
    std::vector<finmod::Tuple> e;
    for (std::uint32_t x = 0; x < n; ++x)
      for (std::uint32_t y = 0; y < n; ++y)
        if (rng() % 3 == 0) e.push_back({x, y});
    exts.push_back(e);
  }
  std::vector<finmod::Element> cv;
  for (std::size_t i = 0; i < constants.size(); ++i)
    cv.push_back(static_cast<finmod::Element>(rng() % n));
  return Structure(finmod::Signature(fs, ps, constants), n, tables, exts, cv);
}

/// Uniformly random permutation of 0..n-1.
inline std::vector<finmod::Element> random_permutation(std::mt19937_64& rng, std::size_t n) {
  std::vector<finmod::Element> p(n);
  std::iota(p.begin(), p.end(), 0);
  for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[rng() % i]);
  return p;
}

}  // namespace oracle

#endif  // FINMOD_TESTS_ORACLES_HPP
