#ifndef FINMOD_STRUCTURE_HPP
#define FINMOD_STRUCTURE_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "world_set.hpp"

namespace finmod {

using Element = std::uint32_t;
using Tuple = std::vector<Element>;

struct Symbol {
  std::string name;
  std::size_t arity = 1;

  friend bool operator==(const Symbol&, const Symbol&) = default;
};

/// Function, predicate and constant symbols of a first-order language.
class Signature {
 public:
  Signature() = default;

  Signature(std::vector<Symbol> functions, std::vector<Symbol> predicates,
            std::vector<std::string> constants)
      : functions_(std::move(functions)),
        predicates_(std::move(predicates)),
        constants_(std::move(constants)) {
    std::set<std::string> names;
    auto claim = [&](const std::string& name) {
      if (name.empty()) throw FormatError("signature: empty symbol name");
      if (!names.insert(name).second)
        throw FormatError("signature: duplicate symbol name '" + name + "'");
    };
    for (const auto& f : functions_) {
      claim(f.name);
      if (f.arity == 0)
        throw FormatError("signature: function '" + f.name +
                          "' must have positive arity");
    }
    for (const auto& p : predicates_) {
      claim(p.name);
      if (p.arity == 0)
        throw FormatError("signature: predicate '" + p.name +
                          "' must have positive arity");
    }
    for (const auto& c : constants_) claim(c);
  }

  /// One unary function symbol and nothing else.
  static Signature unar(const std::string& name = "F") {
    return Signature({{name, 1}}, {}, {});
  }

  const std::vector<Symbol>& functions() const noexcept { return functions_; }
  const std::vector<Symbol>& predicates() const noexcept { return predicates_; }
  const std::vector<std::string>& constants() const noexcept {
    return constants_;
  }

  bool all_functions_unary() const noexcept {
    return std::all_of(functions_.begin(), functions_.end(),
                       [](const Symbol& f) { return f.arity == 1; });
  }

  std::optional<std::size_t> function_index(const std::string& name) const {
    return find(functions_, name);
  }
  std::optional<std::size_t> predicate_index(const std::string& name) const {
    return find(predicates_, name);
  }

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  static std::optional<std::size_t> find(const std::vector<Symbol>& symbols,
                                         const std::string& name) {
    for (std::size_t i = 0; i < symbols.size(); ++i)
      if (symbols[i].name == name) return i;
    return std::nullopt;
  }

  std::vector<Symbol> functions_;
  std::vector<Symbol> predicates_;
  std::vector<std::string> constants_;
};

/// Largest function table (universe^arity entries) a Structure will hold.
inline constexpr std::size_t kMaxTableEntries = std::size_t{1} << 24;

inline std::size_t table_entries(std::size_t universe, std::size_t arity) {
  std::size_t entries = 1;
  for (std::size_t k = 0; k < arity; ++k) {
    if (entries > kMaxTableEntries / std::max<std::size_t>(universe, 1))
      throw CapExceeded("function table of arity " + std::to_string(arity) +
                        " over universe " + std::to_string(universe) +
                        " exceeds " + std::to_string(kMaxTableEntries) +
                        " entries");
    entries *= universe;
  }
  return entries;
}

/**
 * A finite first-order structure over the universe 0..n-1.
 *
 * Function tables are flat: the entry for (a1,...,ak) sits at index
 * a1*n^(k-1) + ... + ak. Predicate extensions are kept sorted and unique.
 * The constructor validates every invariant, so any Structure value is a
 * well-formed model.
 */
class Structure {
 public:
  Structure(Signature signature, std::size_t size,
            std::vector<std::vector<Element>> function_tables,
            std::vector<std::vector<Tuple>> predicate_extensions,
            std::vector<Element> constant_values)
      : signature_(std::move(signature)),
        size_(size),
        tables_(std::move(function_tables)),
        extensions_(std::move(predicate_extensions)),
        constants_(std::move(constant_values)) {
    if (size_ == 0) throw FormatError("structure: universe must be nonempty");
    const auto& fs = signature_.functions();
    if (tables_.size() != fs.size())
      throw FormatError("structure: expected " + std::to_string(fs.size()) +
                        " function tables, got " +
                        std::to_string(tables_.size()));
    for (std::size_t f = 0; f < fs.size(); ++f) {
      std::size_t entries = table_entries(size_, fs[f].arity);
      if (tables_[f].size() != entries)
        throw FormatError("structure: table for '" + fs[f].name + "' has " +
                          std::to_string(tables_[f].size()) +
                          " entries, expected " + std::to_string(entries));
      for (std::size_t i = 0; i < entries; ++i)
        if (tables_[f][i] >= size_)
          throw FormatError("structure: function '" + fs[f].name +
                            "' maps entry " + std::to_string(i) + " to " +
                            std::to_string(tables_[f][i]) +
                            ", outside universe of size " +
                            std::to_string(size_));
    }
    const auto& ps = signature_.predicates();
    if (extensions_.size() != ps.size())
      throw FormatError("structure: expected " + std::to_string(ps.size()) +
                        " predicate extensions, got " +
                        std::to_string(extensions_.size()));
    for (std::size_t p = 0; p < ps.size(); ++p) {
      for (const auto& t : extensions_[p]) {
        if (t.size() != ps[p].arity)
          throw FormatError("structure: predicate '" + ps[p].name +
                            "' tuple has wrong arity");
        for (auto e : t)
          if (e >= size_)
            throw FormatError("structure: predicate '" + ps[p].name +
                              "' mentions element " + std::to_string(e) +
                              " outside universe");
      }
      std::sort(extensions_[p].begin(), extensions_[p].end());
      extensions_[p].erase(
          std::unique(extensions_[p].begin(), extensions_[p].end()),
          extensions_[p].end());
    }
    const auto& cs = signature_.constants();
    if (constants_.size() != cs.size())
      throw FormatError("structure: expected " + std::to_string(cs.size()) +
                        " constant values, got " +
                        std::to_string(constants_.size()));
    for (std::size_t c = 0; c < cs.size(); ++c)
      if (constants_[c] >= size_)
        throw FormatError("structure: constant '" + cs[c] + "' is " +
                          std::to_string(constants_[c]) +
                          ", outside universe");
  }

  const Signature& signature() const noexcept { return signature_; }
  std::size_t size() const noexcept { return size_; }

  const std::vector<Element>& table(std::size_t f) const { return tables_[f]; }
  const std::vector<Tuple>& extension(std::size_t p) const {
    return extensions_[p];
  }
  const std::vector<Element>& constants() const noexcept { return constants_; }
  Element constant(std::size_t c) const { return constants_[c]; }

  std::size_t arity(std::size_t f) const {
    return signature_.functions()[f].arity;
  }

  std::size_t index_of(std::span<const Element> args) const noexcept {
    std::size_t idx = 0;
    for (auto a : args) idx = idx * size_ + a;
    return idx;
  }

  Element apply(std::size_t f, std::span<const Element> args) const {
    return tables_[f][index_of(args)];
  }

  Element apply(std::size_t f, Element x) const { return tables_[f][x]; }

  bool holds(std::size_t p, std::span<const Element> args) const {
    const auto& ext = extensions_[p];
    return std::binary_search(
        ext.begin(), ext.end(), args,
        [](const auto& a, const auto& b) {
          return std::lexicographical_compare(a.begin(), a.end(), b.begin(),
                                              b.end());
        });
  }

  friend bool operator==(const Structure&, const Structure&) = default;

 private:
  Signature signature_;
  std::size_t size_;
  std::vector<std::vector<Element>> tables_;
  std::vector<std::vector<Tuple>> extensions_;
  std::vector<Element> constants_;
};

/// Decodes a flat table index back into its argument tuple.
inline void decode_index(std::size_t idx, std::size_t universe,
                         std::span<Element> args) {
  for (std::size_t k = args.size(); k-- > 0;) {
    args[k] = static_cast<Element>(idx % universe);
    idx /= universe;
  }
}

/// The one-generated unar of size n with F(i) = i+1 mod n.
inline Structure make_cycle(std::size_t n) {
  if (n == 0) throw PreconditionError("make_cycle: length must be positive");
  std::vector<Element> f(n);
  for (std::size_t i = 0; i < n; ++i) f[i] = static_cast<Element>((i + 1) % n);
  return Structure(Signature::unar(), n, {std::move(f)}, {}, {});
}

/**
 * Disjoint sum with universes concatenated in order. Only defined for
 * signatures with unary functions and no constants; other cases have no
 * canonical cross-block convention and are rejected.
 */
inline Structure disjoint_sum(const std::vector<Structure>& parts) {
  if (parts.empty())
    throw PreconditionError("disjoint_sum: needs at least one part");
  const Signature& sig = parts.front().signature();
  for (const auto& p : parts)
    if (!(p.signature() == sig))
      throw PreconditionError("disjoint_sum: parts have different signatures");
  if (!sig.constants().empty())
    throw PreconditionError(
        "disjoint_sum: undefined for signatures with constant symbols");
  if (!sig.all_functions_unary())
    throw PreconditionError(
        "disjoint_sum: functions of arity >= 2 have no cross-block "
        "convention");

  std::size_t total = 0;
  for (const auto& p : parts) total += p.size();
  std::vector<std::vector<Element>> tables(sig.functions().size());
  std::vector<std::vector<Tuple>> exts(sig.predicates().size());
  std::size_t offset = 0;
  for (const auto& p : parts) {
    for (std::size_t f = 0; f < tables.size(); ++f)
      for (auto v : p.table(f))
        tables[f].push_back(static_cast<Element>(v + offset));
    for (std::size_t r = 0; r < exts.size(); ++r)
      for (auto t : p.extension(r)) {
        for (auto& e : t) e = static_cast<Element>(e + offset);
        exts[r].push_back(std::move(t));
      }
    offset += p.size();
  }
  return Structure(sig, total, std::move(tables), std::move(exts), {});
}

/**
 * Adds one new point a = size() with F(a) = a for every function and every
 * constant (old and newly declared) interpreted as a. new_constants extends
 * the signature, which is how a constant-free structure gains the point
 * that every submodel must contain.
 */
inline Structure add_fixed_point(const Structure& s,
                                 const std::vector<std::string>& new_constants =
                                     {}) {
  const Signature& sig = s.signature();
  if (!sig.all_functions_unary())
    throw PreconditionError(
        "add_fixed_point: only defined for unary function symbols");
  std::vector<std::string> consts = sig.constants();
  consts.insert(consts.end(), new_constants.begin(), new_constants.end());
  Signature out_sig(sig.functions(), sig.predicates(), consts);

  auto a = static_cast<Element>(s.size());
  std::vector<std::vector<Element>> tables;
  for (std::size_t f = 0; f < sig.functions().size(); ++f) {
    auto t = s.table(f);
    t.push_back(a);
    tables.push_back(std::move(t));
  }
  std::vector<std::vector<Tuple>> exts;
  for (std::size_t p = 0; p < sig.predicates().size(); ++p)
    exts.push_back(s.extension(p));
  std::vector<Element> cvals(consts.size(), a);
  return Structure(std::move(out_sig), s.size() + 1, std::move(tables),
                   std::move(exts), std::move(cvals));
}

/// True iff `subset` contains every constant and is closed under every
/// function table.
inline bool is_closed(const Structure& s, const WorldSet& subset) {
  for (auto c : s.constants())
    if (!subset.test(c)) return false;
  auto members = subset.points();
  for (std::size_t f = 0; f < s.signature().functions().size(); ++f) {
    std::size_t k = s.arity(f);
    std::vector<std::size_t> pos(k, 0);
    std::vector<Element> args(k);
    if (members.empty()) continue;
    while (true) {
      for (std::size_t i = 0; i < k; ++i)
        args[i] = static_cast<Element>(members[pos[i]]);
      if (!subset.test(s.apply(f, args))) return false;
      std::size_t i = k;
      while (i > 0 && ++pos[i - 1] == members.size()) pos[--i] = 0;
      if (i == 0) break;
    }
  }
  return true;
}

/**
 * The submodel with universe `subset`, relabeled so the i-th smallest member
 * becomes element i.
 */
inline Structure induced_submodel(const Structure& s, const WorldSet& subset) {
  if (subset.universe() != s.size())
    throw PreconditionError("induced_submodel: subset over wrong universe");
  if (subset.empty())
    throw PreconditionError("induced_submodel: submodels are nonempty");
  if (!is_closed(s, subset))
    throw PreconditionError(
        "induced_submodel: subset is not closed under the operations");
  auto members = subset.points();
  std::vector<Element> index(s.size(), 0);
  for (std::size_t i = 0; i < members.size(); ++i)
    index[members[i]] = static_cast<Element>(i);
  const std::size_t m = members.size();

  const Signature& sig = s.signature();
  std::vector<std::vector<Element>> tables;
  for (std::size_t f = 0; f < sig.functions().size(); ++f) {
    std::size_t k = s.arity(f);
    std::size_t entries = table_entries(m, k);
    std::vector<Element> t(entries);
    std::vector<Element> local(k), global(k);
    for (std::size_t idx = 0; idx < entries; ++idx) {
      decode_index(idx, m, local);
      for (std::size_t i = 0; i < k; ++i)
        global[i] = static_cast<Element>(members[local[i]]);
      t[idx] = index[s.apply(f, global)];
    }
    tables.push_back(std::move(t));
  }
  std::vector<std::vector<Tuple>> exts;
  for (std::size_t p = 0; p < sig.predicates().size(); ++p) {
    std::vector<Tuple> e;
    for (const auto& t : s.extension(p)) {
      if (std::all_of(t.begin(), t.end(),
                      [&](Element x) { return subset.test(x); })) {
        Tuple r;
        for (auto x : t) r.push_back(index[x]);
        e.push_back(std::move(r));
      }
    }
    exts.push_back(std::move(e));
  }
  std::vector<Element> cvals;
  for (auto c : s.constants()) cvals.push_back(index[c]);
  return Structure(sig, m, std::move(tables), std::move(exts),
                   std::move(cvals));
}

/// Image of s under the bijection perm (element x becomes perm[x]).
inline Structure relabel(const Structure& s, const std::vector<Element>& perm) {
  const std::size_t n = s.size();
  if (perm.size() != n)
    throw PreconditionError("relabel: permutation has wrong length");
  std::vector<bool> hit(n, false);
  for (auto p : perm) {
    if (p >= n || hit[p])
      throw PreconditionError("relabel: not a permutation");
    hit[p] = true;
  }
  const Signature& sig = s.signature();
  std::vector<std::vector<Element>> tables;
  for (std::size_t f = 0; f < sig.functions().size(); ++f) {
    std::size_t k = s.arity(f);
    std::size_t entries = table_entries(n, k);
    std::vector<Element> t(entries);
    std::vector<Element> args(k), mapped(k);
    for (std::size_t idx = 0; idx < entries; ++idx) {
      decode_index(idx, n, args);
      for (std::size_t i = 0; i < k; ++i) mapped[i] = perm[args[i]];
      t[s.index_of(mapped)] = perm[s.table(f)[idx]];
    }
    tables.push_back(std::move(t));
  }
  std::vector<std::vector<Tuple>> exts;
  for (std::size_t p = 0; p < sig.predicates().size(); ++p) {
    std::vector<Tuple> e;
    for (auto t : s.extension(p)) {
      for (auto& x : t) x = perm[x];
      e.push_back(std::move(t));
    }
    exts.push_back(std::move(e));
  }
  std::vector<Element> cvals;
  for (auto c : s.constants()) cvals.push_back(perm[c]);
  return Structure(sig, n, std::move(tables), std::move(exts),
                   std::move(cvals));
}

}  // namespace finmod

#endif  // FINMOD_STRUCTURE_HPP
