// Suffix tray: the top of the suffix tree is kept as a navigable tree, the
// fringe is delegated to suffix-array intervals.
//
// A node is "heavy" when it is internal and has at least sigma leaves below
// it (tree leaves are never heavy).  Heavy nodes are classified by how many
// heavy children they have:
//   - branching (>= 2): carries a dispatch array indexed by symbol, so the
//     next step costs O(1),
//   - non-branching (exactly 1): carries the separator symbol of its single
//     heavy child; one comparison decides between that child and the
//     suffix-array interval hanging off either side,
//   - sigma-leaf (0): owns its whole suffix-array interval.
// Queries therefore walk at most O(m) tree steps with O(1) work per heavy
// node, and finish with one interval search over a fringe interval of
// length at most sigma^2, which costs the remaining pattern symbols plus
// O(log sigma) comparisons.
#pragma once

#include <cassert>
#include <cstdint>
#include <optional>
#include <vector>

#include "suffix_array.hpp"
#include "suffix_tree.hpp"
#include "text.hpp"

namespace stray {

enum class NodeClass : std::uint8_t {
  kOrdinary,      // not heavy: plain tree node or leaf
  kBranching,     // heavy, >= 2 heavy children
  kNonBranching,  // heavy, exactly 1 heavy child
  kSigmaLeaf,     // heavy, no heavy children
};

class SuffixTray {
 public:
  using Interval = SuffixArrayIndex::Interval;
  using QueryStats = SuffixArrayIndex::QueryStats;

  struct Stats {
    std::uint32_t branching = 0;
    std::uint32_t nonbranching = 0;
    std::uint32_t sigma_leaves = 0;
    std::uint64_t dispatch_cells = 0;
    std::uint64_t stored_intervals = 0;
    std::uint64_t max_interval_len = 0;
  };

  // `sigma_override` pins the heaviness threshold to a value other than the
  // text's alphabet size (the dispatch width grows to cover both).
  explicit SuffixTray(const SuffixTree& tree,
                      std::optional<std::uint32_t> sigma_override = {})
      : tree_(&tree) {
    const std::uint32_t text_sigma = tree.sa().text().sigma();
    sigma_eff_ = std::max<std::uint32_t>(1, sigma_override.value_or(text_sigma));
    width_ = std::max(sigma_eff_, text_sigma);
    classify();
  }

  std::uint32_t sigma_eff() const { return sigma_eff_; }
  const SuffixTree& tree() const { return *tree_; }
  NodeClass cls(std::uint32_t v) const { return cls_[v]; }

  // Separator symbol of a non-branching node (first symbol on the edge to
  // its heavy child).
  Symbol separator(std::uint32_t v) const {
    assert(cls_[v] == NodeClass::kNonBranching);
    return tree_->edge_symbol(sigma_kid_[v]);
  }

  std::uint32_t heavy_kid(std::uint32_t v) const {
    assert(cls_[v] == NodeClass::kNonBranching);
    return sigma_kid_[v];
  }

  std::uint32_t dispatch(std::uint32_t v, Symbol c) const {
    assert(cls_[v] == NodeClass::kBranching);
    if (c == kNoSymbol || c == kSentinel || c > width_) return kNoNode;
    return dispatch_[dispatch_base_[v] + c - 1];
  }

  std::optional<Interval> find(const std::vector<Symbol>& pat,
                               QueryStats* stats = nullptr) const {
    const std::uint32_t m = static_cast<std::uint32_t>(pat.size());
    const SuffixArrayIndex& sa = tree_->sa();
    std::uint32_t v = tree_->root();
    if (cls_[v] == NodeClass::kOrdinary)  // tiny text: no heavy nodes at all
      return sa.interval_search(pat, stats, 0, interval_of(v));

    for (;;) {
      const std::uint32_t t = tree_->node(v).depth;
      if (t >= m) return interval_of(v);  // the pattern ends on v's path
      const Symbol c = pat[t];
      switch (cls_[v]) {
        case NodeClass::kBranching: {
          std::uint32_t kid = dispatch(v, c);
          if (kid == kNoNode) return std::nullopt;
          if (cls_[kid] == NodeClass::kOrdinary)
            return sa.interval_search(pat, stats, t + 1, interval_of(kid));
          if (!verify_edge(kid, t + 1, m, pat, stats)) return std::nullopt;
          v = kid;
          break;
        }
        case NodeClass::kNonBranching: {
          const Symbol tau = separator(v);
          if (stats) ++stats->symbol_comparisons;
          if (c == tau) {
            std::uint32_t kid = sigma_kid_[v];
            if (!verify_edge(kid, t + 1, m, pat, stats)) return std::nullopt;
            v = kid;
            break;
          }
          const auto& kn = tree_->node(sigma_kid_[v]);
          const auto& vn = tree_->node(v);
          if (c < tau) {
            if (kn.lo == vn.lo) return std::nullopt;  // empty left flank
            return sa.interval_search(pat, stats, t, Interval{vn.lo, kn.lo - 1});
          }
          if (kn.hi == vn.hi) return std::nullopt;  // empty right flank
          return sa.interval_search(pat, stats, t, Interval{kn.hi + 1, vn.hi});
        }
        case NodeClass::kSigmaLeaf:
          return sa.interval_search(pat, stats, t, interval_of(v));
        case NodeClass::kOrdinary:
          assert(false);
          return std::nullopt;
      }
    }
  }

  // Structure counters for the size/interval invariants.
  Stats stats() const {
    Stats s;
    for (std::uint32_t v = 0; v < tree_->node_count(); ++v) {
      auto note_interval = [&](std::uint64_t len) {
        ++s.stored_intervals;
        s.max_interval_len = std::max(s.max_interval_len, len);
      };
      switch (cls_[v]) {
        case NodeClass::kOrdinary:
          break;
        case NodeClass::kBranching:
          ++s.branching;
          s.dispatch_cells += width_;
          for (const std::uint32_t* k = tree_->kids_begin(v); k != tree_->kids_end(v); ++k)
            if (cls_[*k] == NodeClass::kOrdinary && tree_->edge_symbol(*k) != kSentinel)
              note_interval(tree_->leaf_count(*k));
          break;
        case NodeClass::kNonBranching: {
          ++s.nonbranching;
          const auto& kn = tree_->node(sigma_kid_[v]);
          const auto& vn = tree_->node(v);
          note_interval(kn.lo - vn.lo);
          note_interval(vn.hi - kn.hi);
          break;
        }
        case NodeClass::kSigmaLeaf:
          ++s.sigma_leaves;
          note_interval(tree_->leaf_count(v));
          break;
      }
    }
    return s;
  }

 private:
  Interval interval_of(std::uint32_t v) const {
    return {tree_->node(v).lo, tree_->node(v).hi};
  }

  // Checks pattern symbols (from..min(depth,m)) along the edge into `kid`.
  bool verify_edge(std::uint32_t kid, std::uint32_t from, std::uint32_t m,
                   const std::vector<Symbol>& pat, QueryStats* stats) const {
    std::uint32_t end = std::min(tree_->node(kid).depth, m);
    for (std::uint32_t t = from; t < end; ++t) {
      if (stats) ++stats->symbol_comparisons;
      if (tree_->path_symbol(kid, t) != pat[t]) return false;
    }
    return true;
  }

  bool heavy(std::uint32_t v) const {
    return !tree_->is_leaf(v) && tree_->leaf_count(v) >= sigma_eff_;
  }

  void classify() {
    const std::uint32_t count = tree_->node_count();
    cls_.assign(count, NodeClass::kOrdinary);
    sigma_kid_.assign(count, kNoNode);
    dispatch_base_.assign(count, 0);
    for (std::uint32_t v = 0; v < count; ++v) {
      if (!heavy(v)) continue;
      std::uint32_t heavy_kids = 0;
      std::uint32_t last_heavy = kNoNode;
      for (const std::uint32_t* k = tree_->kids_begin(v); k != tree_->kids_end(v); ++k)
        if (heavy(*k)) {
          ++heavy_kids;
          last_heavy = *k;
        }
      if (heavy_kids >= 2) {
        cls_[v] = NodeClass::kBranching;
        dispatch_base_[v] = static_cast<std::uint32_t>(dispatch_.size());
        dispatch_.resize(dispatch_.size() + width_, kNoNode);
        for (const std::uint32_t* k = tree_->kids_begin(v); k != tree_->kids_end(v); ++k) {
          Symbol c = tree_->edge_symbol(*k);
          if (c != kSentinel) dispatch_[dispatch_base_[v] + c - 1] = *k;
        }
      } else if (heavy_kids == 1) {
        cls_[v] = NodeClass::kNonBranching;
        sigma_kid_[v] = last_heavy;
      } else {
        cls_[v] = NodeClass::kSigmaLeaf;
      }
    }
  }

  const SuffixTree* tree_;
  std::uint32_t sigma_eff_ = 1;
  std::uint32_t width_ = 1;
  std::vector<NodeClass> cls_;
  std::vector<std::uint32_t> sigma_kid_;      // non-branching -> heavy child
  std::vector<std::uint32_t> dispatch_base_;  // branching -> offset in dispatch_
  std::vector<std::uint32_t> dispatch_;
};

}  // namespace stray
