// Static suffix tree, built from the suffix array and LCP array in linear
// time with an explicit stack (no recursion, so degenerate texts are fine).
//
// Nodes store their suffix-array rank interval instead of edge labels; any
// symbol on the path to a node can be read through the anchor of one of its
// leaves, so edges cost no extra storage.  Children are kept sorted by first
// edge symbol and found by binary search.
#pragma once

#include <cassert>
#include <cstdint>
#include <optional>
#include <vector>

#include "suffix_array.hpp"
#include "text.hpp"

namespace stray {

class SuffixTree {
 public:
  struct Node {
    std::uint32_t parent = kNoNode;
    std::uint32_t depth = 0;      // string depth, sentinel included on leaves
    std::uint32_t lo = 0, hi = 0;  // inclusive suffix-array rank interval
    std::uint32_t kid_begin = 0, kid_end = 0;  // range in kids()
    std::uint32_t anchor = kNoAnchor;          // set on leaves
  };

  struct NavStats {
    std::uint64_t symbol_comparisons = 0;
  };

  explicit SuffixTree(const SuffixArrayIndex& sa) : sa_(&sa) { build(); }

  const SuffixArrayIndex& sa() const { return *sa_; }
  std::uint32_t root() const { return root_; }
  std::uint32_t node_count() const { return static_cast<std::uint32_t>(nodes_.size()); }
  const Node& node(std::uint32_t v) const { return nodes_[v]; }
  bool is_leaf(std::uint32_t v) const { return nodes_[v].anchor != kNoAnchor; }
  std::uint32_t leaf_count(std::uint32_t v) const {
    return nodes_[v].hi - nodes_[v].lo + 1;
  }

  // Children of v in first-symbol order, as a contiguous id range.
  const std::uint32_t* kids_begin(std::uint32_t v) const {
    return kids_.data() + nodes_[v].kid_begin;
  }
  const std::uint32_t* kids_end(std::uint32_t v) const {
    return kids_.data() + nodes_[v].kid_end;
  }
  std::uint32_t kid_count(std::uint32_t v) const {
    return nodes_[v].kid_end - nodes_[v].kid_begin;
  }

  // Anchor of one leaf below v; path symbols are read through it.
  std::uint32_t hint_anchor(std::uint32_t v) const {
    return sa_->suffix_at(nodes_[v].lo);
  }

  // Symbol at offset `t` on the path from the root to v (t < depth(v)).
  Symbol path_symbol(std::uint32_t v, std::uint32_t t) const {
    assert(t < nodes_[v].depth);
    return sa_->text().suffix_symbol(hint_anchor(v), t);
  }

  // First symbol on the edge into v.
  Symbol edge_symbol(std::uint32_t v) const {
    return path_symbol(v, nodes_[nodes_[v].parent].depth);
  }

  // Child of v whose edge starts with c; each binary-search probe counts as
  // one symbol comparison.
  std::uint32_t child_by_symbol(std::uint32_t v, Symbol c, NavStats* stats = nullptr) const {
    std::uint32_t lo = nodes_[v].kid_begin, hi = nodes_[v].kid_end;
    while (lo < hi) {
      std::uint32_t mid = lo + (hi - lo) / 2;
      if (stats) ++stats->symbol_comparisons;
      Symbol s = kid_syms_[mid];
      if (s == c) return kids_[mid];
      if (s < c)
        lo = mid + 1;
      else
        hi = mid;
    }
    return kNoNode;
  }

  // Descends from the root matching `pat`; returns the rank interval of all
  // suffixes with the pattern as a prefix.
  std::optional<SuffixArrayIndex::Interval> navigate(const std::vector<Symbol>& pat,
                                                     NavStats* stats = nullptr) const {
    const std::uint32_t m = static_cast<std::uint32_t>(pat.size());
    std::uint32_t v = root_;
    std::uint32_t t = 0;
    while (t < m) {
      std::uint32_t kid = child_by_symbol(v, pat[t], stats);
      if (kid == kNoNode) return std::nullopt;
      ++t;  // the lookup above matched pat[t]
      std::uint32_t end = std::min(nodes_[kid].depth, m);
      for (; t < end; ++t) {
        if (stats) ++stats->symbol_comparisons;
        if (path_symbol(kid, t) != pat[t]) return std::nullopt;
      }
      v = kid;
    }
    return SuffixArrayIndex::Interval{nodes_[v].lo, nodes_[v].hi};
  }

 private:
  struct OpenNode {
    std::uint32_t depth, lo;
    std::vector<std::uint32_t> kids;
  };

  void build() {
    const std::uint32_t n_leaves = sa_->size();
    const auto& lcp = sa_->lcp();

    // Leaves get ids 0..n_leaves-1 (id == rank); internal nodes follow.
    nodes_.resize(n_leaves);
    for (std::uint32_t r = 0; r < n_leaves; ++r) {
      nodes_[r].anchor = sa_->suffix_at(r);
      nodes_[r].depth = sa_->text().suffix_length(nodes_[r].anchor);
      nodes_[r].lo = nodes_[r].hi = r;
    }

    auto materialize = [&](OpenNode&& b, std::uint32_t hi) {
      nodes_.push_back(Node{});
      Node& nd = nodes_.back();
      nd.depth = b.depth;
      nd.lo = b.lo;
      nd.hi = hi;
      std::uint32_t id = static_cast<std::uint32_t>(nodes_.size()) - 1;
      child_lists_.push_back(std::move(b.kids));
      return id;
    };

    std::vector<OpenNode> stk;
    stk.push_back({0, 0, {}});
    stk.back().kids.push_back(0);
    for (std::uint32_t r = 1; r < n_leaves; ++r) {
      std::uint32_t x = lcp[r];
      std::uint32_t pending = kNoNode;
      std::uint32_t pending_lo = r;
      while (stk.back().depth > x) {
        OpenNode b = std::move(stk.back());
        stk.pop_back();
        if (pending != kNoNode) b.kids.push_back(pending);
        pending_lo = b.lo;
        pending = materialize(std::move(b), r - 1);
      }
      if (x > stk.back().depth) {
        OpenNode fresh{x, pending_lo, {}};
        if (pending != kNoNode) {
          fresh.kids.push_back(pending);
        } else {
          // steal the previous leaf from the current top
          fresh.lo = r - 1;
          fresh.kids.push_back(stk.back().kids.back());
          stk.back().kids.pop_back();
        }
        stk.push_back(std::move(fresh));
      } else if (pending != kNoNode) {
        stk.back().kids.push_back(pending);
      }
      stk.back().kids.push_back(r);
    }
    std::uint32_t pending = kNoNode;
    while (!stk.empty()) {
      OpenNode b = std::move(stk.back());
      stk.pop_back();
      if (pending != kNoNode) b.kids.push_back(pending);
      pending = materialize(std::move(b), n_leaves - 1);
    }
    root_ = pending;

    // Flatten child lists (internal ids carry their list at id - n_leaves).
    kids_.reserve(nodes_.size() - 1);
    kid_syms_.reserve(nodes_.size() - 1);
    for (std::uint32_t v = n_leaves; v < nodes_.size(); ++v) {
      auto& list = child_lists_[v - n_leaves];
      nodes_[v].kid_begin = static_cast<std::uint32_t>(kids_.size());
      for (std::uint32_t kid : list) {
        nodes_[kid].parent = v;
        kids_.push_back(kid);
      }
      nodes_[v].kid_end = static_cast<std::uint32_t>(kids_.size());
    }
    child_lists_.clear();
    child_lists_.shrink_to_fit();
    kid_syms_.assign(kids_.size(), 0);
    for (std::uint32_t v = n_leaves; v < nodes_.size(); ++v)
      for (std::uint32_t i = nodes_[v].kid_begin; i < nodes_[v].kid_end; ++i)
        kid_syms_[i] = path_symbol(kids_[i], nodes_[v].depth);
  }

  const SuffixArrayIndex* sa_;
  std::uint32_t root_ = kNoNode;
  std::vector<Node> nodes_;
  std::vector<std::vector<std::uint32_t>> child_lists_;  // build scratch
  std::vector<std::uint32_t> kids_;
  std::vector<Symbol> kid_syms_;
};

}  // namespace stray
