// Suffix array over a Text, with LCP array, range-LCP queries, and an
// instrumented pattern search that reports exact symbol-comparison counts.
//
// Construction is linear (induced sorting); the LCP array is built by the
// usual rank-walk.  Pattern search runs in two phases: the left boundary is
// a binary search that never re-reads a pattern position (mismatch checks
// are resolved through range-LCP lookups whenever possible), and the right
// boundary is found with range-LCP lookups alone, costing zero symbol
// comparisons.
#pragma once

#include <algorithm>
#include <bit>
#include <cassert>
#include <cstdint>
#include <optional>
#include <vector>

#include "text.hpp"

namespace stray {

namespace detail {

inline constexpr std::uint32_t kEmpty = 0xffffffffu;

// Induced-sorting suffix array construction.  `s` must end with a unique
// smallest symbol; `k` is one past the largest symbol value.
inline void sais_rec(const std::vector<std::uint32_t>& s,
                     std::vector<std::uint32_t>& sa, std::uint32_t k) {
  const std::uint32_t n = static_cast<std::uint32_t>(s.size());
  if (n == 1) {
    sa[0] = 0;
    return;
  }

  std::vector<bool> is_s(n);
  is_s[n - 1] = true;
  for (std::uint32_t i = n - 1; i-- > 0;)
    is_s[i] = s[i] < s[i + 1] || (s[i] == s[i + 1] && is_s[i + 1]);
  auto is_lms = [&](std::uint32_t i) { return i > 0 && is_s[i] && !is_s[i - 1]; };

  std::vector<std::uint32_t> cnt(k, 0), bkt(k);
  for (std::uint32_t c : s) ++cnt[c];
  auto bucket_bounds = [&](bool ends) {
    std::uint32_t sum = 0;
    for (std::uint32_t c = 0; c < k; ++c) {
      sum += cnt[c];
      bkt[c] = ends ? sum : sum - cnt[c];
    }
  };

  auto induce = [&]() {
    bucket_bounds(false);
    for (std::uint32_t i = 0; i < n; ++i) {
      std::uint32_t j = sa[i];
      if (j != kEmpty && j != 0 && !is_s[j - 1]) sa[bkt[s[j - 1]]++] = j - 1;
    }
    bucket_bounds(true);
    for (std::uint32_t i = n; i-- > 0;) {
      std::uint32_t j = sa[i];
      if (j != kEmpty && j != 0 && is_s[j - 1]) sa[--bkt[s[j - 1]]] = j - 1;
    }
  };

  // Pass 1: seed with LMS positions in text order, induce an approximate
  // order that sorts the LMS substrings.
  std::fill(sa.begin(), sa.end(), kEmpty);
  bucket_bounds(true);
  for (std::uint32_t i = 1; i < n; ++i)
    if (is_lms(i)) sa[--bkt[s[i]]] = i;
  induce();

  // Name the LMS substrings in sorted order.
  std::vector<std::uint32_t> name(n, kEmpty);
  std::uint32_t names = 0;
  std::uint32_t prev = kEmpty;
  for (std::uint32_t i = 0; i < n; ++i) {
    std::uint32_t j = sa[i];
    if (j == kEmpty || !is_lms(j)) continue;
    bool differ = prev == kEmpty;
    if (!differ) {
      for (std::uint32_t d = 0;; ++d) {
        if (s[prev + d] != s[j + d]) {
          differ = true;
          break;
        }
        if (d > 0 && (is_lms(prev + d) || is_lms(j + d))) {
          differ = !(is_lms(prev + d) && is_lms(j + d));
          break;
        }
      }
    }
    if (differ) ++names;
    name[j] = names - 1;
    prev = j;
  }

  std::vector<std::uint32_t> lms_pos, s1;
  for (std::uint32_t i = 1; i < n; ++i)
    if (is_lms(i)) {
      lms_pos.push_back(i);
      s1.push_back(name[i]);
    }
  const std::uint32_t m = static_cast<std::uint32_t>(lms_pos.size());

  std::vector<std::uint32_t> sa1(m);
  if (names < m) {
    sais_rec(s1, sa1, names);
  } else {
    for (std::uint32_t i = 0; i < m; ++i) sa1[s1[i]] = i;
  }

  // Pass 2: seed with LMS suffixes in their true order, induce the result.
  std::fill(sa.begin(), sa.end(), kEmpty);
  bucket_bounds(true);
  for (std::uint32_t i = m; i-- > 0;) {
    std::uint32_t j = lms_pos[sa1[i]];
    sa[--bkt[s[j]]] = j;
  }
  induce();
}

}  // namespace detail

enum class RmqKind {
  kSparseTable,  // O(n log n) space, O(1) range minimum
  kBlocked,      // O(n) space, O(block) range minimum
};

// Range-minimum structure over a fixed vector.
class Rmq {
 public:
  Rmq() = default;

  Rmq(std::vector<std::uint32_t> values, RmqKind kind)
      : kind_(kind), values_(std::move(values)) {
    const std::size_t n = values_.size();
    if (n == 0) return;
    if (kind_ == RmqKind::kSparseTable) {
      std::uint32_t levels = std::bit_width(n);
      table_.assign(levels, values_);
      for (std::uint32_t j = 1; j < levels; ++j)
        for (std::size_t i = 0; i + (std::size_t{1} << j) <= n; ++i)
          table_[j][i] =
              std::min(table_[j - 1][i], table_[j - 1][i + (std::size_t{1} << (j - 1))]);
    } else {
      std::size_t blocks = (n + kBlock - 1) / kBlock;
      std::vector<std::uint32_t> mins(blocks, detail::kEmpty);
      for (std::size_t i = 0; i < n; ++i)
        mins[i / kBlock] = std::min(mins[i / kBlock], values_[i]);
      std::uint32_t levels = std::bit_width(blocks);
      table_.assign(levels, mins);
      for (std::uint32_t j = 1; j < levels; ++j)
        for (std::size_t i = 0; i + (std::size_t{1} << j) <= blocks; ++i)
          table_[j][i] =
              std::min(table_[j - 1][i], table_[j - 1][i + (std::size_t{1} << (j - 1))]);
    }
  }

  // Minimum of values[l..r], inclusive.
  std::uint32_t min_in(std::uint32_t l, std::uint32_t r) const {
    assert(l <= r && r < values_.size());
    if (kind_ == RmqKind::kSparseTable) return table_min(l, r);
    std::uint32_t bl = l / kBlock, br = r / kBlock;
    if (bl == br) return scan_min(l, r);
    std::uint32_t best = std::min(scan_min(l, (bl + 1) * kBlock - 1),
                                  scan_min(br * kBlock, r));
    if (bl + 1 <= br - 1) best = std::min(best, table_min(bl + 1, br - 1));
    return best;
  }

 private:
  static constexpr std::uint32_t kBlock = 32;

  std::uint32_t scan_min(std::uint32_t l, std::uint32_t r) const {
    std::uint32_t best = values_[l];
    for (std::uint32_t i = l + 1; i <= r; ++i) best = std::min(best, values_[i]);
    return best;
  }

  std::uint32_t table_min(std::uint32_t l, std::uint32_t r) const {
    std::uint32_t j = std::bit_width(static_cast<std::uint32_t>(r - l + 1)) - 1;
    return std::min(table_[j][l], table_[j][r + 1 - (std::uint32_t{1} << j)]);
  }

  RmqKind kind_ = RmqKind::kSparseTable;
  std::vector<std::uint32_t> values_;
  std::vector<std::vector<std::uint32_t>> table_;
};

class SuffixArrayIndex {
 public:
  struct QueryStats {
    std::uint64_t symbol_comparisons = 0;
    std::uint64_t rmq_queries = 0;
  };

  struct Interval {
    std::uint32_t lo, hi;  // inclusive suffix-array ranks
    std::uint32_t length() const { return hi - lo + 1; }
  };

  explicit SuffixArrayIndex(const Text& text, RmqKind rmq = RmqKind::kSparseTable)
      : text_(&text), epoch_(text.epoch()) {
    const std::uint32_t n = text.size();
    std::vector<std::uint32_t> fwd = text.forward();
    std::vector<std::uint32_t> sa_fwd(n + 1);
    detail::sais_rec(fwd, sa_fwd, text.sigma() + 1);

    sa_.resize(n + 1);
    rank_.resize(n + 1);
    for (std::uint32_t i = 0; i <= n; ++i) {
      sa_[i] = n - sa_fwd[i];  // forward index -> end anchor
      rank_[sa_[i]] = i;
    }

    // Rank-walk LCP construction over the forward sequence.
    lcp_.assign(n + 1, 0);
    std::uint32_t h = 0;
    for (std::uint32_t i = 0; i <= n; ++i) {
      std::uint32_t r = rank_[n - i];  // rank of the suffix starting at fwd i
      if (r == 0) {
        h = 0;
        continue;
      }
      std::uint32_t j = n - sa_[r - 1];  // fwd start of the preceding suffix
      while (fwd[i + h] == fwd[j + h]) ++h;
      lcp_[r] = h;
      if (h > 0) --h;
    }
    rmq_ = Rmq(lcp_, rmq);
  }

  // Rebinds the text reference (used after moving the owning object).
  void rebind(const Text& text) {
    assert(text.epoch() == epoch_);
    text_ = &text;
  }

  std::uint32_t size() const { return static_cast<std::uint32_t>(sa_.size()); }
  const std::vector<std::uint32_t>& sa() const { return sa_; }
  const std::vector<std::uint32_t>& lcp() const { return lcp_; }
  std::uint32_t suffix_at(std::uint32_t i) const { return sa_[i]; }
  std::uint32_t rank_of_anchor(std::uint32_t a) const { return rank_[a]; }
  const Text& text() const { return *text_; }

  // lcp of the suffixes at ranks i < j: minimum of lcp_[i+1..j].
  std::uint32_t range_lcp(std::uint32_t i, std::uint32_t j, QueryStats* stats) const {
    assert(i < j);
    if (stats) ++stats->rmq_queries;
    return rmq_.min_in(i + 1, j);
  }

  Interval full_interval() const { return {0, size() - 1}; }

  // Ranks of all suffixes that have `pat` as a prefix, restricted to
  // `within`.  `known_prefix` asserts that the first `known_prefix` pattern
  // symbols match every suffix in `within`, so comparisons start past them.
  std::optional<Interval> interval_search(const std::vector<Symbol>& pat,
                                          QueryStats* stats = nullptr,
                                          std::uint32_t known_prefix = 0,
                                          std::optional<Interval> within = {}) const {
    assert(text_->epoch() == epoch_);
    const std::uint32_t m = static_cast<std::uint32_t>(pat.size());
    Interval range = within.value_or(full_interval());
    assert(known_prefix <= m);

    // Walks pattern-vs-suffix from offset `from`, counting one comparison
    // per symbol pair inspected.  Returns the new match length and the
    // comparison result at the mismatch (0 if the whole pattern matched).
    auto walk = [&](std::uint32_t anchor, std::uint32_t from,
                    std::uint32_t* out_lcp) -> int {
      std::uint32_t t = from;
      for (; t < m; ++t) {
        Symbol ps = pat[t];
        Symbol ss = t <= anchor ? text_->suffix_symbol(anchor, t) : kSentinel;
        if (stats) ++stats->symbol_comparisons;
        if (ps != ss) {
          *out_lcp = t;
          return ps < ss ? -1 : 1;
        }
      }
      *out_lcp = m;
      return 0;
    };

    // Phase 1: leftmost rank L in `range` whose suffix is >= the pattern.
    std::uint32_t lo = range.lo, hi = range.hi;
    std::uint32_t l_len, r_len;
    std::uint32_t L;
    std::uint32_t match_len;

    std::uint32_t lolen;
    int c = walk(sa_[lo], known_prefix, &lolen);
    if (c <= 0) {
      L = lo;
      match_len = lolen;
    } else if (lo == hi) {
      return std::nullopt;  // single suffix, pattern greater
    } else {
      l_len = lolen;
      // Derive the comparison against the right boundary from range-lcp
      // when possible; fall back to a walk that skips the agreed prefix.
      std::uint32_t k0 = range_lcp(lo, hi, stats);
      int ch;
      if (l_len < k0) {
        r_len = l_len;
        ch = 1;  // suffix(hi) starts like suffix(lo); mismatch repeats
      } else if (l_len > k0) {
        r_len = k0;
        ch = -1;  // suffix(hi) exceeds suffix(lo) at k0, pattern still matches there
      } else {
        ch = walk(sa_[hi], k0, &r_len);
      }
      if (ch > 0) return std::nullopt;  // pattern greater than the whole range

      // Invariant: suffix(lo) < pat <= suffix(hi), l_len/r_len exact.
      while (hi - lo > 1) {
        std::uint32_t mid = lo + (hi - lo) / 2;
        if (l_len >= r_len) {
          std::uint32_t k = range_lcp(lo, mid, stats);
          if (k > l_len) {
            lo = mid;  // mid repeats suffix(lo)'s mismatch
          } else if (k < l_len) {
            hi = mid;  // mid exceeds suffix(lo) before the pattern does
            r_len = k;
          } else {
            std::uint32_t len;
            int cm = walk(sa_[mid], l_len, &len);
            if (cm > 0) {
              lo = mid;
              l_len = len;
            } else {
              hi = mid;
              r_len = len;
            }
          }
        } else {
          std::uint32_t k = range_lcp(mid, hi, stats);
          if (k > r_len) {
            hi = mid;  // mid agrees with suffix(hi) past the decision point
          } else if (k < r_len) {
            lo = mid;  // mid falls short of suffix(hi) where pattern agreed
            l_len = k;
          } else {
            std::uint32_t len;
            int cm = walk(sa_[mid], r_len, &len);
            if (cm > 0) {
              lo = mid;
              l_len = len;
            } else {
              hi = mid;
              r_len = len;
            }
          }
        }
      }
      L = hi;
      match_len = r_len;
    }

    if (match_len < m) return std::nullopt;  // lower bound is not a match

    // Phase 2: rightmost rank R with range_lcp(L, R) >= m, by range-lcp
    // bisection only.
    std::uint32_t R = L;
    std::uint32_t rhi = range.hi;
    if (R < rhi && m == 0) {
      R = rhi;
    } else {
      std::uint32_t good = L, bad = rhi + 1;
      while (bad - good > 1) {
        std::uint32_t mid = good + (bad - good) / 2;
        if (range_lcp(L, mid, stats) >= m)
          good = mid;
        else
          bad = mid;
      }
      R = good;
    }
    return Interval{L, R};
  }

  // Sorted 1-based front positions for an interval.
  std::vector<std::uint32_t> positions(Interval iv) const {
    std::vector<std::uint32_t> out;
    out.reserve(iv.length());
    for (std::uint32_t i = iv.lo; i <= iv.hi; ++i)
      out.push_back(text_->front_position(sa_[i]));
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  const Text* text_;
  std::uint64_t epoch_;
  std::vector<std::uint32_t> sa_;    // rank -> anchor
  std::vector<std::uint32_t> rank_;  // anchor -> rank
  std::vector<std::uint32_t> lcp_;   // lcp_[i] = lcp(sa_[i-1], sa_[i]); lcp_[0] = 0
  Rmq rmq_;
};

}  // namespace stray
