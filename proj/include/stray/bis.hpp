// Balanced run structure: an AVL tree with parent pointers over one
// lexicographic run of suffixes.  Every member carries an order-maintenance
// tag, so membership splits can be driven by O(1) tag comparisons and any
// two suffixes anywhere can be ordered in constant time.
//
// The tree supports comparator-driven insert (with predecessor/successor
// reporting), tag-keyed split, and a pattern search over the run that
// resumes each comparison at the smaller of the two fence match lengths.
#pragma once

#include <cassert>
#include <cstdint>
#include <optional>
#include <utility>

#include "order_maintenance.hpp"
#include "text.hpp"

namespace stray {

class Bis;

struct SuffixNode {
  std::uint32_t anchor = 0;
  SuffixNode* parent = nullptr;
  SuffixNode* left = nullptr;
  SuffixNode* right = nullptr;
  std::uint8_t height = 1;
  std::uint32_t size = 1;
  OrderList::Node* tag = nullptr;
  Bis* bis_if_root = nullptr;  // set exactly on tree roots
};

namespace avl {

inline int h(const SuffixNode* x) { return x ? x->height : 0; }
inline std::uint32_t sz(const SuffixNode* x) { return x ? x->size : 0; }

inline void update(SuffixNode* x) {
  x->height = static_cast<std::uint8_t>(1 + std::max(h(x->left), h(x->right)));
  x->size = 1 + sz(x->left) + sz(x->right);
}

inline void set_left(SuffixNode* p, SuffixNode* c) {
  p->left = c;
  if (c) c->parent = p;
}
inline void set_right(SuffixNode* p, SuffixNode* c) {
  p->right = c;
  if (c) c->parent = p;
}

inline SuffixNode* rot_right(SuffixNode* y) {
  SuffixNode* x = y->left;
  set_left(y, x->right);
  set_right(x, y);
  update(y);
  update(x);
  return x;
}

inline SuffixNode* rot_left(SuffixNode* y) {
  SuffixNode* x = y->right;
  set_right(y, x->left);
  set_left(x, y);
  update(y);
  update(x);
  return x;
}

// Restores the AVL invariant at x (imbalance at most 2); returns the new
// subtree root with its parent pointer left dangling for the caller.
inline SuffixNode* balance(SuffixNode* x) {
  update(x);
  if (h(x->left) > h(x->right) + 1) {
    if (h(x->left->left) < h(x->left->right)) set_left(x, rot_left(x->left));
    return rot_right(x);
  }
  if (h(x->right) > h(x->left) + 1) {
    if (h(x->right->right) < h(x->right->left)) set_right(x, rot_right(x->right));
    return rot_left(x);
  }
  return x;
}

inline SuffixNode* leftmost(SuffixNode* x) {
  while (x && x->left) x = x->left;
  return x;
}
inline SuffixNode* rightmost(SuffixNode* x) {
  while (x && x->right) x = x->right;
  return x;
}

inline SuffixNode* top_of(SuffixNode* x) {
  while (x->parent) x = x->parent;
  return x;
}

// Inserts `nn` into the tree rooted at `root`; `before(node)` answers "does
// the new suffix order before `node`".  Reports the in-run neighbors.
template <class Before>
SuffixNode* insert(SuffixNode* root, SuffixNode* nn, Before&& before,
                   SuffixNode** pred, SuffixNode** succ) {
  *pred = *succ = nullptr;
  if (!root) {
    nn->parent = nullptr;
    return nn;
  }
  SuffixNode* cur = root;
  for (;;) {
    if (before(cur)) {
      *succ = cur;
      if (!cur->left) {
        set_left(cur, nn);
        break;
      }
      cur = cur->left;
    } else {
      *pred = cur;
      if (!cur->right) {
        set_right(cur, nn);
        break;
      }
      cur = cur->right;
    }
  }
  SuffixNode* x = nn->parent;
  SuffixNode* new_root = root;
  while (x) {
    SuffixNode* p = x->parent;
    SuffixNode* b = balance(x);
    if (p) {
      if (p->left == x)
        set_left(p, b);
      else
        set_right(p, b);
    } else {
      b->parent = nullptr;
      new_root = b;
    }
    x = p;
  }
  return new_root;
}

// Joins l < k < r into one tree (heights may differ arbitrarily).
inline SuffixNode* join(SuffixNode* l, SuffixNode* k, SuffixNode* r) {
  if (h(l) > h(r) + 1) {
    set_right(l, join(l->right, k, r));
    SuffixNode* b = balance(l);
    b->parent = nullptr;
    return b;
  }
  if (h(r) > h(l) + 1) {
    set_left(r, join(l, k, r->left));
    SuffixNode* b = balance(r);
    b->parent = nullptr;
    return b;
  }
  k->parent = nullptr;
  set_left(k, l);
  set_right(k, r);
  update(k);
  return k;
}

// Splits by order tag: left gets every member ordered before `tag`, right
// gets the rest.  Returned roots have null parents.
inline std::pair<SuffixNode*, SuffixNode*> split_before(SuffixNode* t,
                                                        const OrderList::Node* tag) {
  if (!t) return {nullptr, nullptr};
  SuffixNode* l = t->left;
  SuffixNode* r = t->right;
  if (l) l->parent = nullptr;
  if (r) r->parent = nullptr;
  t->left = t->right = nullptr;
  t->parent = nullptr;
  t->bis_if_root = nullptr;
  update(t);
  if (OrderList::compare(t->tag, tag) < 0) {
    auto [rl, rr] = split_before(r, tag);
    return {join(l, t, rl), rr};
  }
  auto [ll, lr] = split_before(l, tag);
  return {ll, join(lr, t, r)};
}

}  // namespace avl

class Bis {
 public:
  Bis() = default;
  Bis(const Bis&) = delete;
  Bis& operator=(const Bis&) = delete;

  SuffixNode* root() const { return root_; }
  bool empty() const { return root_ == nullptr; }
  std::uint32_t size() const { return avl::sz(root_); }
  SuffixNode* min() const { return avl::leftmost(root_); }
  SuffixNode* max() const { return avl::rightmost(root_); }

  // Takes ownership of a subtree produced by the avl primitives.
  void set_root(SuffixNode* r) {
    if (root_ && root_->bis_if_root == this) root_->bis_if_root = nullptr;
    root_ = r;
    if (r) {
      r->parent = nullptr;
      r->bis_if_root = this;
    }
  }

  template <class Before>
  void insert(SuffixNode* nn, Before&& before, SuffixNode** pred, SuffixNode** succ) {
    SuffixNode* r =
        avl::insert(root_, nn, static_cast<Before&&>(before), pred, succ);
    if (r != root_) {
      if (root_) root_->bis_if_root = nullptr;
      root_ = r;
      r->bis_if_root = this;
    }
    root_->parent = nullptr;
  }

  // The Bis whose tree contains `x` (parent walk to the root).
  static Bis* owner_of(SuffixNode* x) {
    Bis* b = avl::top_of(x)->bis_if_root;
    assert(b);
    return b;
  }

  // Members whose suffixes have `pat` as a prefix; both boundary descents
  // restart comparisons at the smaller fence match length, which is always
  // a sound lower bound on the member's agreement with the pattern.
  std::optional<std::pair<SuffixNode*, SuffixNode*>> search_pattern(
      const Text& text, const std::vector<Symbol>& pat, std::uint32_t known_prefix = 0,
      std::uint64_t* comparisons = nullptr) const {
    if (!root_) return std::nullopt;
    const std::uint32_t m = static_cast<std::uint32_t>(pat.size());

    // Compares pat (from offset `from`) with the suffix at `anchor`:
    // <0 pattern sorts before, 0 pattern is a prefix, >0 pattern after.
    auto cmp_from = [&](std::uint32_t anchor, std::uint32_t from,
                        std::uint32_t* match) -> int {
      std::uint32_t t = from;
      for (; t < m; ++t) {
        Symbol ss = t <= anchor ? text.suffix_symbol(anchor, t) : kSentinel;
        if (comparisons) ++*comparisons;
        if (pat[t] != ss) {
          *match = t;
          return pat[t] < ss ? -1 : 1;
        }
      }
      *match = m;
      return 0;
    };

    // Leftmost member >= pattern.
    SuffixNode* first = nullptr;
    std::uint32_t first_len = 0;
    {
      std::uint32_t fence_l = known_prefix, fence_r = known_prefix;
      SuffixNode* cur = root_;
      while (cur) {
        std::uint32_t len;
        int c = cmp_from(cur->anchor, std::min(fence_l, fence_r), &len);
        if (c > 0) {
          fence_l = len;
          cur = cur->right;
        } else {
          first = cur;
          first_len = len;
          fence_r = len;
          cur = cur->left;
        }
      }
    }
    if (!first || first_len < m) return std::nullopt;

    // Rightmost member that still has the pattern as a prefix.
    SuffixNode* last = nullptr;
    {
      std::uint32_t fence_l = known_prefix, fence_r = known_prefix;
      SuffixNode* cur = root_;
      while (cur) {
        std::uint32_t len;
        int c = cmp_from(cur->anchor, std::min(fence_l, fence_r), &len);
        if (c == 0) {
          last = cur;
          fence_l = len;
          cur = cur->right;
        } else if (c > 0) {
          fence_l = len;
          cur = cur->right;
        } else {
          fence_r = len;
          cur = cur->left;
        }
      }
    }
    assert(last);
    return std::make_pair(first, last);
  }

  // Trist bookkeeping: runs are chained, owned by a heavy node, and may be
  // attributed to a dispatch array under construction.
  Bis* prev = nullptr;
  Bis* next = nullptr;
  std::uint32_t owner = 0xffffffffu;
  std::uint32_t fill_node = 0xffffffffu;

 private:
  SuffixNode* root_ = nullptr;
};

}  // namespace stray
