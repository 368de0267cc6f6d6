#ifndef FINMOD_WORLD_SET_HPP
#define FINMOD_WORLD_SET_HPP

#include <algorithm>
#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace finmod {

/**
 * A subset of 0..n-1 for a fixed universe size n.
 *
 * Sets over at most 64 points live in a single inline word, so the large
 * families of subsets built by powerset algebras do not allocate. Bits above
 * n are always zero; every operation keeps it that way.
 *
 * Ordering is numeric: the set is read as a binary number with point 0 as the
 * least significant bit.
 */
class WorldSet {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t bits_per_word = 64;

  WorldSet() = default;

  explicit WorldSet(std::size_t universe) : size_(universe) {
    if (universe > bits_per_word) heap_.assign(word_count(), 0);
  }

  WorldSet(std::size_t universe, std::initializer_list<std::size_t> points)
      : WorldSet(universe) {
    for (auto p : points) set(p);
  }

  static WorldSet full(std::size_t universe) {
    WorldSet s(universe);
    s.fill();
    return s;
  }

  static WorldSet from_points(std::size_t universe,
                              const std::vector<std::size_t>& points) {
    WorldSet s(universe);
    for (auto p : points) s.set(p);
    return s;
  }

  /// Builds the set whose membership bits are the low `universe` bits of mask.
  static WorldSet from_mask(std::size_t universe, Word mask) {
    WorldSet s(universe);
    s.word(0) = mask;
    s.trim();
    return s;
  }

  std::size_t universe() const noexcept { return size_; }

  std::size_t word_count() const noexcept {
    return (size_ + bits_per_word - 1) / bits_per_word;
  }

  bool test(std::size_t p) const noexcept {
    assert(p < size_);
    return (word(p / bits_per_word) >> (p % bits_per_word)) & 1U;
  }

  void set(std::size_t p) noexcept {
    assert(p < size_);
    word(p / bits_per_word) |= Word{1} << (p % bits_per_word);
  }

  void reset(std::size_t p) noexcept {
    assert(p < size_);
    word(p / bits_per_word) &= ~(Word{1} << (p % bits_per_word));
  }

  void assign(std::size_t p, bool value) noexcept {
    if (value)
      set(p);
    else
      reset(p);
  }

  void fill() noexcept {
    for (std::size_t w = 0; w < word_count(); ++w) word(w) = ~Word{0};
    trim();
  }

  void clear() noexcept {
    for (std::size_t w = 0; w < word_count(); ++w) word(w) = 0;
  }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (std::size_t w = 0; w < word_count(); ++w) c += std::popcount(word(w));
    return c;
  }

  bool empty() const noexcept {
    for (std::size_t w = 0; w < word_count(); ++w)
      if (word(w) != 0) return false;
    return true;
  }

  bool is_full() const noexcept { return count() == size_; }

  bool intersects(const WorldSet& o) const noexcept {
    assert(size_ == o.size_);
    for (std::size_t w = 0; w < word_count(); ++w)
      if ((word(w) & o.word(w)) != 0) return true;
    return false;
  }

  bool is_subset_of(const WorldSet& o) const noexcept {
    assert(size_ == o.size_);
    for (std::size_t w = 0; w < word_count(); ++w)
      if ((word(w) & ~o.word(w)) != 0) return false;
    return true;
  }

  WorldSet& operator&=(const WorldSet& o) noexcept {
    assert(size_ == o.size_);
    for (std::size_t w = 0; w < word_count(); ++w) word(w) &= o.word(w);
    return *this;
  }

  WorldSet& operator|=(const WorldSet& o) noexcept {
    assert(size_ == o.size_);
    for (std::size_t w = 0; w < word_count(); ++w) word(w) |= o.word(w);
    return *this;
  }

  WorldSet& operator-=(const WorldSet& o) noexcept {
    assert(size_ == o.size_);
    for (std::size_t w = 0; w < word_count(); ++w) word(w) &= ~o.word(w);
    return *this;
  }

  /// Complement relative to the universe.
  WorldSet operator~() const {
    WorldSet r(*this);
    for (std::size_t w = 0; w < word_count(); ++w) r.word(w) = ~word(w);
    r.trim();
    return r;
  }

  friend WorldSet operator&(WorldSet a, const WorldSet& b) { return a &= b; }
  friend WorldSet operator|(WorldSet a, const WorldSet& b) { return a |= b; }
  friend WorldSet operator-(WorldSet a, const WorldSet& b) { return a -= b; }

  friend bool operator==(const WorldSet& a, const WorldSet& b) noexcept {
    if (a.size_ != b.size_) return false;
    for (std::size_t w = 0; w < a.word_count(); ++w)
      if (a.word(w) != b.word(w)) return false;
    return true;
  }

  /// Numeric order; sets over different universes order by universe first.
  friend bool operator<(const WorldSet& a, const WorldSet& b) noexcept {
    if (a.size_ != b.size_) return a.size_ < b.size_;
    for (std::size_t w = a.word_count(); w-- > 0;)
      if (a.word(w) != b.word(w)) return a.word(w) < b.word(w);
    return false;
  }

  /// Smallest member at or after `from`, or universe() when there is none.
  std::size_t next(std::size_t from) const noexcept {
    if (from >= size_) return size_;
    std::size_t w = from / bits_per_word;
    Word cur = word(w) & (~Word{0} << (from % bits_per_word));
    while (true) {
      if (cur != 0) return w * bits_per_word + std::countr_zero(cur);
      if (++w >= word_count()) return size_;
      cur = word(w);
    }
  }

  std::size_t first() const noexcept { return next(0); }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t p = first(); p < size_; p = next(p + 1)) fn(p);
  }

  std::vector<std::size_t> points() const {
    std::vector<std::size_t> out;
    out.reserve(count());
    for_each([&](std::size_t p) { out.push_back(p); });
    return out;
  }

  /// Low word; the whole set when universe() <= 64.
  Word low_word() const noexcept { return size_ == 0 ? 0 : word(0); }

  std::size_t hash() const noexcept {
    std::size_t h = std::hash<std::size_t>{}(size_);
    for (std::size_t w = 0; w < word_count(); ++w)
      h ^= std::hash<Word>{}(word(w)) + 0x9e3779b97f4a7c15ULL + (h << 6) +
           (h >> 2);
    return h;
  }

 private:
  Word& word(std::size_t i) noexcept {
    return size_ <= bits_per_word ? inline_ : heap_[i];
  }
  Word word(std::size_t i) const noexcept {
    return size_ <= bits_per_word ? inline_ : heap_[i];
  }

  void trim() noexcept {
    if (size_ == 0) return;
    std::size_t tail = size_ % bits_per_word;
    if (tail != 0) word(word_count() - 1) &= (Word{1} << tail) - 1;
  }

  std::size_t size_ = 0;
  Word inline_ = 0;
  std::vector<Word> heap_;
};

struct WorldSetHash {
  std::size_t operator()(const WorldSet& s) const noexcept { return s.hash(); }
};

/// A partition of 0..n-1 as a block index per point, blocks numbered in
/// order of first occurrence (a restricted-growth string).
using BlockLabels = std::vector<std::size_t>;

/// Renumbers labels so that blocks appear in order of first occurrence.
inline BlockLabels normalize_labels(const BlockLabels& labels) {
  BlockLabels out(labels.size());
  std::vector<std::size_t> seen_label;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto it = std::find(seen_label.begin(), seen_label.end(), labels[i]);
    if (it == seen_label.end()) {
      seen_label.push_back(labels[i]);
      out[i] = seen_label.size() - 1;
    } else {
      out[i] = static_cast<std::size_t>(it - seen_label.begin());
    }
  }
  return out;
}

inline std::size_t block_count(const BlockLabels& labels) {
  std::size_t m = 0;
  for (auto l : labels) m = std::max(m, l + 1);
  return m;
}

/// Blocks of a partition as point lists, in label order.
inline std::vector<std::vector<std::size_t>> blocks_of(
    const BlockLabels& labels) {
  std::vector<std::vector<std::size_t>> out(block_count(labels));
  for (std::size_t i = 0; i < labels.size(); ++i) out[labels[i]].push_back(i);
  return out;
}

/// Inverse of blocks_of; throws std::invalid_argument unless the blocks
/// partition 0..n-1.
inline BlockLabels labels_from_blocks(
    std::size_t n, const std::vector<std::vector<std::size_t>>& blocks) {
  BlockLabels labels(n, n);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty()) throw std::invalid_argument("empty block");
    for (auto p : blocks[b]) {
      if (p >= n) throw std::invalid_argument("block point out of range");
      if (labels[p] != n) throw std::invalid_argument("blocks overlap");
      labels[p] = b;
    }
  }
  for (auto l : labels)
    if (l == n) throw std::invalid_argument("blocks do not cover universe");
  return normalize_labels(labels);
}

}  // namespace finmod

#endif  // FINMOD_WORLD_SET_HPP
