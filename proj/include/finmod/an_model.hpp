#ifndef FINMOD_AN_MODEL_HPP
#define FINMOD_AN_MODEL_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "error.hpp"
#include "kripke.hpp"
#include "report.hpp"

namespace finmod {

/// A point (s, i) of the model on words of length < n times the naturals.
struct AnPoint {
  TreeWord word;
  std::uint64_t index = 0;

  friend bool operator==(const AnPoint&, const AnPoint&) = default;
  friend auto operator<=>(const AnPoint&, const AnPoint&) = default;
};

/// Injective code of words used by the third multiplication case.
using WordCode = std::function<std::uint64_t(const TreeWord&)>;

/// Position of s in the length-lexicographic enumeration of words over n
/// letters.
inline std::uint64_t length_lex_rank(const TreeWord& s, std::size_t n) {
  std::uint64_t offset = 0, level = 1;
  for (std::size_t l = 0; l < s.size(); ++l) {
    offset += level;
    level *= n;
  }
  std::uint64_t within = 0;
  for (auto c : s) within = within * n + c;
  return offset + within;
}

inline TreeWord common_prefix(const TreeWord& s, const TreeWord& t) {
  std::size_t l = 0;
  while (l < s.size() && l < t.size() && s[l] == t[l]) ++l;
  return TreeWord(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(l));
}

inline constexpr std::size_t kMaxAnBranching = 4;

/**
 * The binary operation of the model on n^{<n} x N:
 *   (s,i)(s,i)            = (s, i+1)
 *   (s,i)(s,j), j<i       = (s^(i mod n), j)        when |s| < n-1
 *   (s,i)(s,i+1), n | i   = (s, i+1+E(s))
 *   otherwise             = (common prefix, min(i,j))
 * The model itself is infinite and never materialized.
 */
class AnModel {
 public:
  explicit AnModel(std::size_t n, WordCode code = {}) : n_(n), code_(std::move(code)) {
    if (n_ == 0) throw PreconditionError("A_n: n must be positive");
    if (n_ > kMaxAnBranching)
      throw CapExceeded("A_n: n = " + std::to_string(n_) + " exceeds cap " +
                        std::to_string(kMaxAnBranching));
    if (!code_) code_ = [n](const TreeWord& s) { return length_lex_rank(s, n); };
  }

  std::size_t n() const noexcept { return n_; }
  std::uint64_t code(const TreeWord& s) const { return code_(s); }

  bool valid(const AnPoint& a) const {
    return a.word.size() < n_ &&
           std::all_of(a.word.begin(), a.word.end(),
                       [&](std::uint8_t c) { return c < n_; });
  }

  AnPoint apply(const AnPoint& a, const AnPoint& b) const {
    if (!valid(a) || !valid(b))
      throw PreconditionError("A_n: point has an invalid word for n = " +
                              std::to_string(n_));
    const std::uint64_t i = a.index, j = b.index;
    if (a.word == b.word) {
      if (i == j) return {a.word, i + 1};
      if (j < i && a.word.size() + 1 < n_) {
        TreeWord w = a.word;
        w.push_back(static_cast<std::uint8_t>(i % n_));
        return {std::move(w), j};
      }
      if (j == i + 1 && i % n_ == 0) return {a.word, j + code_(a.word)};
    }
    return {common_prefix(a.word, b.word), std::min(i, j)};
  }

  /// p(x) = x x.
  AnPoint p(const AnPoint& x) const { return apply(x, x); }

  AnPoint p_power(AnPoint x, std::uint64_t k) const {
    for (std::uint64_t r = 0; r < k; ++r) x = p(x);
    return x;
  }

  /// The one-parameter formula x p(x) = p^{E(s)+1}(x), evaluated at x.
  bool phi(const TreeWord& s, const AnPoint& x) const {
    return apply(x, p(x)) == p_power(x, code_(s) + 1);
  }

 private:
  std::size_t n_;
  WordCode code_;
};

inline AnPoint an_apply(std::size_t n, const AnPoint& a, const AnPoint& b) {
  return AnModel(n).apply(a, b);
}

inline constexpr std::uint64_t kMaxAnBound = 50;

/// True iff (t,j) lies in the up-set of (s,i): s a prefix of t and i <= j.
inline bool in_upset(const AnPoint& base, const AnPoint& x) {
  return is_prefix(base.word, x.word) && base.index <= x.index;
}

/**
 * Pointwise checks of the model's lemmas for all words and indices up to
 * `bound`. `code` replaces the word code (a non-injective one is the
 * negative control). Every entry is bounded evidence about an infinite
 * model.
 */
inline VerificationReport an_lemma_suite(std::size_t n, std::uint64_t bound,
                                         WordCode code = {}) {
  if (bound > kMaxAnBound)
    throw CapExceeded("an_lemma_suite: bound " + std::to_string(bound) +
                      " exceeds cap " + std::to_string(kMaxAnBound));
  const AnModel model(n, std::move(code));
  const auto words = length_lex_words(n, n);
  const std::string tag = "n=" + std::to_string(n) + ",bound=" + std::to_string(bound);
  std::vector<AnPoint> points;
  for (const auto& w : words)
    for (std::uint64_t i = 0; i <= bound; ++i) points.push_back({w, i});

  VerificationReport rep;

  // Injectivity of the code on the words considered.
  {
    std::vector<std::uint64_t> codes;
    for (const auto& w : words) codes.push_back(model.code(w));
    std::sort(codes.begin(), codes.end());
    bool injective = std::adjacent_find(codes.begin(), codes.end()) == codes.end();
    rep.add("an.code-injective[" + tag + "]", "An-word-code", injective,
            std::to_string(words.size()) + " words", Evidence::bounded);
  }

  // p^k(s,i) = (s, i+k).
  {
    std::size_t checked = 0;
    std::string first_bad;
    for (const auto& x : points) {
      AnPoint y = x;
      for (std::uint64_t k = 0; k <= bound; ++k) {
        ++checked;
        if (!(y == AnPoint{x.word, x.index + k}) && first_bad.empty())
          first_bad = "k=" + std::to_string(k) + " at index " +
                      std::to_string(x.index);
        y = model.p(y);
      }
    }
    rep.add("an.p-power[" + tag + "]", "An-p-power", first_bad.empty(),
            first_bad.empty() ? std::to_string(checked) + " instances"
                              : "first failure: " + first_bad,
            Evidence::bounded);
  }

  // phi_s(t,i) iff s = t and n | i.
  {
    std::size_t checked = 0, bad = 0;
    for (const auto& s : words)
      for (const auto& x : points) {
        ++checked;
        bool expected = s == x.word && x.index % n == 0;
        if (model.phi(s, x) != expected) ++bad;
      }
    rep.add("an.lemma-x1[" + tag + "]", "An-lemma-x1", bad == 0,
            std::to_string(checked) + " instances, " + std::to_string(bad) +
                " mismatches",
            Evidence::bounded);
  }

  // (t,l) -> (t,l+n) commutes with the operation; every up-set X(s,i) is a
  // subset of the whole, so checking all pairs covers each X(s,i) -> X(s,i+n).
  {
    std::size_t checked = 0, bad = 0;
    auto shift = [&](const AnPoint& x) { return AnPoint{x.word, x.index + n}; };
    for (const auto& x : points)
      for (const auto& y : points) {
        ++checked;
        if (!(shift(model.apply(x, y)) == model.apply(shift(x), shift(y)))) ++bad;
      }
    rep.add("an.shift-isomorphism[" + tag + "]", "An-lemma-isom", bad == 0,
            std::to_string(checked) + " pairs, " + std::to_string(bad) +
                " mismatches",
            Evidence::bounded);
  }

  // Each up-set X(s,i) is closed under the operation.
  {
    std::size_t checked = 0, bad = 0;
    std::vector<AnPoint> products;
    products.reserve(points.size() * points.size());
    for (const auto& x : points)
      for (const auto& y : points) products.push_back(model.apply(x, y));
    for (const auto& base : points) {
      std::vector<bool> inside(points.size());
      for (std::size_t a = 0; a < points.size(); ++a)
        inside[a] = in_upset(base, points[a]);
      for (std::size_t a = 0; a < points.size(); ++a) {
        if (!inside[a]) continue;
        for (std::size_t b = 0; b < points.size(); ++b) {
          if (!inside[b]) continue;
          ++checked;
          if (!in_upset(base, products[a * points.size() + b])) ++bad;
        }
      }
    }
    rep.add("an.upset-closed[" + tag + "]", "An-lemma-submodels", bad == 0,
            std::to_string(checked) + " products, " + std::to_string(bad) +
                " escape their up-set",
            Evidence::bounded);
  }
  return rep;
}

}  // namespace finmod

#endif  // FINMOD_AN_MODEL_HPP
