// Online suffix tree that grows by prepending symbols to the text.
//
// Each extension adds exactly one leaf (the new whole-text suffix) and at
// most one internal node (an edge split).  The insertion point is found by
// climbing from the previous whole-text leaf to the nearest ancestor that
// carries a link for the new symbol, jumping through that link, and then
// descending by symbol comparisons.  Links are hard: node u links to node v
// under symbol a exactly when path(v) = a + path(u).  Whenever a node with
// path a+W is created, the node for W is guaranteed to exist (the two
// suffixes that branch there also branch one position later), and it lies
// on the climbed path, so links stay complete without any search.
//
// The descent makes this worst-case superlinear over adversarial inputs,
// but each individual extension is correct and bounded by the depth of the
// insertion point; typical inputs stay near-linear.
#pragma once

#include <cassert>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "suffix_array.hpp"
#include "text.hpp"

namespace stray {

class OnlineSuffixTree {
 public:
  struct Node {
    std::uint32_t parent = kNoNode;
    std::uint32_t depth = 0;        // string depth; for leaves includes the sentinel
    std::uint32_t hint_anchor = 0;  // anchor of some leaf below, for path symbols
    std::uint32_t leaf_anchor = kNoAnchor;  // set exactly on leaves
    std::map<Symbol, std::uint32_t> children;  // first edge symbol -> node
    std::map<Symbol, std::uint32_t> wlink;     // symbol a -> node for a+path
  };

  struct Extension {
    std::uint32_t new_leaf = kNoNode;
    std::uint32_t leaf_parent = kNoNode;    // node the leaf was attached to
    std::uint32_t new_internal = kNoNode;   // the split node, if any
    std::uint32_t split_child = kNoNode;    // former child demoted under the split
  };

  // Binds to `text` and replays all its current suffixes.
  explicit OnlineSuffixTree(const Text& text) : text_(&text) {
    nodes_.emplace_back();  // root
    nodes_.emplace_back();  // sentinel leaf
    nodes_[kRoot].hint_anchor = 0;
    Node& sl = nodes_[1];
    sl.parent = kRoot;
    sl.depth = 1;
    sl.leaf_anchor = 0;
    nodes_[kRoot].children[kSentinel] = 1;
    last_leaf_ = 1;
    for (std::uint32_t k = 1; k <= text.size(); ++k) do_extend(k);
  }

  void rebind(const Text& text) { text_ = &text; }

  // Call after Text::prepend; returns what changed.
  Extension extend() {
    assert(text_->size() == extended_ + 1);
    return do_extend(text_->size());
  }

  static constexpr std::uint32_t kRoot = 0;
  std::uint32_t node_count() const { return static_cast<std::uint32_t>(nodes_.size()); }
  const Node& node(std::uint32_t v) const { return nodes_[v]; }
  bool is_leaf(std::uint32_t v) const { return nodes_[v].leaf_anchor != kNoAnchor; }
  std::uint32_t last_leaf() const { return last_leaf_; }
  const Text& text() const { return *text_; }

  Symbol path_symbol(std::uint32_t v, std::uint32_t t) const {
    assert(t < nodes_[v].depth);
    return text_->suffix_symbol(nodes_[v].hint_anchor, t);
  }

  Symbol edge_symbol(std::uint32_t v) const {
    return path_symbol(v, nodes_[nodes_[v].parent].depth);
  }

  std::uint32_t child_by_symbol(std::uint32_t v, Symbol c) const {
    auto it = nodes_[v].children.find(c);
    return it == nodes_[v].children.end() ? kNoNode : it->second;
  }

  // Deepest node whose path is a prefix of the pattern, plus the matched
  // length (standard descent; used for queries and verification).
  struct Locus {
    std::uint32_t node;     // deepest fully entered node
    std::uint32_t matched;  // number of pattern symbols matched
    bool full;              // whole pattern matched
    std::uint32_t below;    // node under the locus edge (== node when on a node)
  };

  Locus navigate(const std::vector<Symbol>& pat) const {
    std::uint32_t v = kRoot;
    std::uint32_t t = 0;
    const std::uint32_t m = static_cast<std::uint32_t>(pat.size());
    while (t < m) {
      std::uint32_t kid = child_by_symbol(v, pat[t]);
      if (kid == kNoNode) return {v, t, false, v};
      ++t;
      std::uint32_t end = std::min(nodes_[kid].depth, m);
      for (; t < end; ++t)
        if (path_symbol(kid, t) != pat[t]) return {v, t, false, kid};
      if (t < nodes_[kid].depth) return {v, t, true, kid};  // ends inside the edge
      v = kid;
    }
    return {v, t, true, v};
  }

  // All occurrences as sorted 1-based front positions (leaf walk).
  std::vector<std::uint32_t> find_all(const std::vector<Symbol>& pat) const {
    Locus lc = navigate(pat);
    if (!lc.full) return {};
    std::vector<std::uint32_t> out;
    collect_leaves(lc.below, out);
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  void collect_leaves(std::uint32_t v, std::vector<std::uint32_t>& out) const {
    if (is_leaf(v)) {
      out.push_back(text_->front_position(nodes_[v].leaf_anchor));
      return;
    }
    for (const auto& [sym, kid] : nodes_[v].children) collect_leaves(kid, out);
  }

  Extension do_extend(std::uint32_t new_anchor) {
    const Symbol a = text_->suffix_symbol(new_anchor, 0);
    Extension ev;

    // Climb from the previous whole-text leaf to the first ancestor with a
    // link for `a`, recording the passed nodes for the later link fix-up.
    climb_.clear();
    std::uint32_t u = last_leaf_;
    std::uint32_t start = kNoNode;  // descent start (link target), root if none
    while (true) {
      auto it = nodes_[u].wlink.find(a);
      if (it != nodes_[u].wlink.end()) {
        start = it->second;
        break;
      }
      climb_.push_back(u);
      if (u == kRoot) break;
      u = nodes_[u].parent;
    }
    if (start == kNoNode) start = kRoot;

    // Descend matching the new suffix until it leaves the tree.
    std::uint32_t x = start;
    std::uint32_t dx = nodes_[start].depth;
    for (;;) {
      Symbol c = text_->suffix_symbol(new_anchor, dx);
      std::uint32_t y = child_by_symbol(x, c);
      if (y == kNoNode) {
        ev.new_leaf = add_leaf(x, new_anchor, c);
        ev.leaf_parent = x;
        break;
      }
      std::uint32_t end = nodes_[y].depth;
      std::uint32_t t = dx + 1;
      while (t < end && path_symbol(y, t) == text_->suffix_symbol(new_anchor, t)) ++t;
      if (t == end) {  // consumed the whole edge
        x = y;
        dx = end;
        continue;
      }
      // Split the edge into x --(dx..t)--> v* --(t..)--> y.
      nodes_.emplace_back();
      std::uint32_t vs = static_cast<std::uint32_t>(nodes_.size()) - 1;
      Node& vn = nodes_[vs];
      vn.parent = x;
      vn.depth = t;
      vn.hint_anchor = nodes_[y].hint_anchor;
      nodes_[x].children[c] = vs;
      vn.children[path_symbol(y, t)] = y;
      nodes_[y].parent = vs;
      ev.new_internal = vs;
      ev.split_child = y;
      ev.new_leaf = add_leaf(vs, new_anchor, text_->suffix_symbol(new_anchor, t));
      ev.leaf_parent = vs;

      // Link the new internal node from the ancestor one level shorter
      // (always strictly below the climb stop, hence on the climbed stack:
      // the split depth exceeds the link target's depth).
      nodes_[find_climbed_at_depth(t - 1)].wlink[a] = vs;
      break;
    }

    nodes_[last_leaf_].wlink[a] = ev.new_leaf;
    last_leaf_ = ev.new_leaf;
    extended_ = new_anchor;
    return ev;
  }

  std::uint32_t add_leaf(std::uint32_t parent, std::uint32_t anchor, Symbol first) {
    nodes_.emplace_back();
    std::uint32_t id = static_cast<std::uint32_t>(nodes_.size()) - 1;
    Node& ln = nodes_[id];
    ln.parent = parent;
    ln.depth = anchor + 1;
    ln.hint_anchor = anchor;
    ln.leaf_anchor = anchor;
    nodes_[parent].children[first] = id;
    return id;
  }

  // The ancestor of the previous whole-text leaf at string depth `d`.
  std::uint32_t find_climbed_at_depth(std::uint32_t d) const {
    for (std::uint32_t v : climb_)
      if (nodes_[v].depth == d) return v;
    assert(false && "link source must lie on the climbed path");
    return kRoot;
  }

  const Text* text_;
  std::vector<Node> nodes_;
  std::uint32_t last_leaf_ = kNoNode;
  std::uint32_t extended_ = 0;
  std::vector<std::uint32_t> climb_;  // scratch
};

}  // namespace stray
