// Dense-rank text storage with O(1) prepend.
//
// The text is stored reversed so a prepend is an append, and every suffix has
// a stable end-anchored address that survives later prepends: anchor a names
// the suffix with exactly a non-sentinel symbols, i.e. rev_[a], rev_[a-1],
// ..., rev_[0].  Anchor 0 is the bare sentinel suffix.
#pragma once

#include <algorithm>
#include <cassert>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace stray {

using Symbol = std::uint32_t;     // dense rank; 0 is reserved for the sentinel
using RawSymbol = std::uint64_t;  // user-facing symbol value, always >= 1

inline constexpr Symbol kSentinel = 0;
inline constexpr Symbol kNoSymbol = 0xffffffffu;  // pattern symbol outside the alphabet
inline constexpr std::uint32_t kNoNode = 0xffffffffu;    // absent tree node
inline constexpr std::uint32_t kNoAnchor = 0xffffffffu;  // absent suffix anchor
inline constexpr RawSymbol kDefaultRangeFactor = 256;

class InvalidSymbol : public std::invalid_argument {
 public:
  explicit InvalidSymbol(const std::string& what) : std::invalid_argument(what) {}
};

// Bidirectional raw <-> rank renaming.  Small raw values live in a
// direct-address table; anything larger falls back to a hash map so that
// unbounded token alphabets stay cheap.
class Alphabet {
 public:
  Symbol sigma() const { return static_cast<Symbol>(raw_by_rank_.size()) - 1; }

  // 0 means "not in the alphabet".
  Symbol rank_of(RawSymbol raw) const {
    if (raw < table_.size()) return table_[static_cast<std::size_t>(raw)];
    auto it = overflow_.find(raw);
    return it == overflow_.end() ? 0 : it->second;
  }

  RawSymbol raw_of(Symbol rank) const {
    if (rank == 0 || rank >= raw_by_rank_.size())
      throw std::out_of_range("Alphabet::raw_of: no such rank");
    return raw_by_rank_[rank];
  }

  // Returns the existing rank, or assigns the next free one (arrival order).
  Symbol intern(RawSymbol raw) {
    assert(raw > 0);
    if (Symbol r = rank_of(raw)) return r;
    raw_by_rank_.push_back(raw);
    Symbol r = static_cast<Symbol>(raw_by_rank_.size() - 1);
    if (raw < kDirectLimit) {
      if (raw >= table_.size()) {
        std::size_t cap = table_.empty() ? 64 : table_.size();
        while (cap <= raw) cap *= 2;
        table_.resize(std::min(cap, kDirectLimit), 0);
      }
      table_[static_cast<std::size_t>(raw)] = r;
    } else {
      overflow_.emplace(raw, r);
    }
    return r;
  }

 private:
  static constexpr std::size_t kDirectLimit = std::size_t{1} << 22;

  std::vector<Symbol> table_;                       // raw -> rank for small raws
  std::unordered_map<RawSymbol, Symbol> overflow_;  // raw -> rank for large raws
  std::vector<RawSymbol> raw_by_rank_{0};           // rank -> raw; slot 0 = sentinel
};

class Text {
 public:
  // Empty text: just the sentinel.
  explicit Text(RawSymbol range_factor = kDefaultRangeFactor)
      : range_factor_(range_factor) {}

  // Whole-text construction: ranks are assigned in sorted raw-value order, so
  // rank comparisons agree with raw comparisons.
  static Text encode(const std::vector<RawSymbol>& raw,
                     RawSymbol range_factor = kDefaultRangeFactor) {
    Text t(range_factor);
    for (RawSymbol s : raw) t.check_raw(s, raw.size());
    std::vector<RawSymbol> distinct(raw);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (RawSymbol s : distinct) t.alphabet_.intern(s);
    t.rev_.reserve(raw.size() + 1);
    for (auto it = raw.rbegin(); it != raw.rend(); ++it)
      t.rev_.push_back(t.alphabet_.rank_of(*it));
    return t;
  }

  // Extends the text by one symbol at the front.  New raw values get the next
  // free rank (arrival order), so rank order may disagree with raw order for
  // texts built this way.
  void prepend(RawSymbol raw) {
    check_raw(raw, size() + 1);
    rev_.push_back(alphabet_.intern(raw));
    ++epoch_;
  }

  std::uint32_t size() const { return static_cast<std::uint32_t>(rev_.size()) - 1; }
  Symbol sigma() const { return alphabet_.sigma(); }
  const Alphabet& alphabet() const { return alphabet_; }
  std::uint64_t epoch() const { return epoch_; }
  RawSymbol range_factor() const { return range_factor_; }

  // Symbol at offset `ofs` into the suffix anchored at `a` (offset 0 = first
  // symbol of the suffix).  Offset a yields the sentinel.
  Symbol suffix_symbol(std::uint32_t a, std::uint32_t ofs) const {
    assert(a < rev_.size() && ofs <= a);
    return rev_[a - ofs];
  }

  // Length of suffix `a` including the sentinel.
  std::uint32_t suffix_length(std::uint32_t a) const {
    assert(a < rev_.size());
    return a + 1;
  }

  // 1-based position from the current front of the text; anchor 0 (the bare
  // sentinel suffix) maps to n+1.
  std::uint32_t front_position(std::uint32_t a) const {
    assert(a < rev_.size());
    return size() - a + 1;
  }

  std::uint32_t anchor_of_front(std::uint32_t pos) const {
    assert(pos >= 1 && pos <= size() + 1);
    return size() - pos + 1;
  }

  // Forward symbol sequence s[0..n], with s[n] the sentinel.
  std::vector<Symbol> forward() const {
    return {rev_.rbegin(), rev_.rend()};
  }

  std::vector<RawSymbol> decode() const {
    std::vector<RawSymbol> out;
    out.reserve(size());
    for (std::uint32_t i = size(); i >= 1; --i) out.push_back(alphabet_.raw_of(rev_[i]));
    return out;
  }

  // Pattern symbols are mapped to ranks; anything outside the alphabet
  // becomes kNoSymbol (which can never match).
  std::vector<Symbol> encode_pattern(const std::vector<RawSymbol>& raw) const {
    std::vector<Symbol> out;
    out.reserve(raw.size());
    for (RawSymbol s : raw) {
      Symbol r = s == 0 ? 0 : alphabet_.rank_of(s);
      out.push_back(r == 0 ? kNoSymbol : r);
    }
    return out;
  }

 private:
  void check_raw(RawSymbol raw, std::size_t n_after) const {
    if (raw == 0)
      throw InvalidSymbol("symbol values must be positive");
    if (range_factor_ != 0 && raw > range_factor_ * std::max<std::size_t>(n_after, 1))
      throw InvalidSymbol("symbol value " + std::to_string(raw) +
                          " exceeds the configured range");
  }

  std::vector<Symbol> rev_{kSentinel};  // rev_[k] = symbol k from the end
  Alphabet alphabet_;
  RawSymbol range_factor_;
  std::uint64_t epoch_ = 0;
};

// Shared-reference comparator: walks the two suffixes symbol by symbol.  The
// sentinel (rank 0) makes shorter suffixes compare smaller, and two suffixes
// are equal only if they are the same suffix.
inline std::strong_ordering suffix_compare_naive(const Text& t, std::uint32_t a,
                                                 std::uint32_t b) {
  for (std::uint32_t ofs = 0;; ++ofs) {
    Symbol x = t.suffix_symbol(a, ofs);
    Symbol y = t.suffix_symbol(b, ofs);
    if (x != y) return x <=> y;
    if (x == kSentinel) return std::strong_ordering::equal;  // implies a == b
  }
}

}  // namespace stray
