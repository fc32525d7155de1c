// Online suffix tray: answers pattern queries on a text that grows by
// prepending, in roughly m + O(log sigma) symbol comparisons.
//
// The suffix tree (maintained by the prepend oracle) is classified exactly
// like the static tray: a node is heavy when it is internal and has at
// least sigma_eff leaves below it.  The fringe below the heavy top is kept
// in balanced runs (Bis) threaded on one global order-maintenance list, so
// any two suffixes compare in O(1).  The run partition is the global
// lexicographic order cut at every heavy node's run boundaries:
//   - a heavy leaf owns one run holding every suffix below it,
//   - a non-branching heavy node owns the two flanking runs around its
//     heavy child,
//   - a branching heavy node keeps one run per gap between consecutive
//     heavy children (registered by the preceding child's edge symbol),
//     reached during queries through the edge target's leaf hint.
// Each extension inserts the new suffix into exactly one run, bumps one
// leaf counter at the lowest heavy ancestor, advances at most two staged
// counter initializations and one staged dispatch-cell fill, and then
// applies any promotions the counters triggered.
//
// Dispatch arrays at branching nodes are built gradually (one cell per
// insertion attributed to them); until complete, lookups probe the first
// two children that became heavy and fall back to the ordered child map at
// most once per query.  Cell reads are guarded by validity stamps, so a
// cell is never trusted before it is written.
//
// Counters are keyed by the child's first edge symbol, so splitting an
// edge transfers the count without any bookkeeping.  Promotions erase the
// promoted child's counter at the parent and stage fresh counters for the
// child's own children.
#pragma once

#include <algorithm>
#include <bit>
#include <cassert>
#include <cstdint>
#include <deque>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "bis.hpp"
#include "online_suffix_tree.hpp"
#include "order_maintenance.hpp"
#include "suffix_tray.hpp"
#include "text.hpp"

namespace stray {

namespace avl {

// In-order successor inside one run (null at the run's end).
inline SuffixNode* next_in_run(SuffixNode* x) {
  if (x->right) return leftmost(x->right);
  while (x->parent && x->parent->right == x) x = x->parent;
  return x->parent;
}

}  // namespace avl

// Symbol-indexed cell store with O(1) "was this cell ever written" reads.
// Backing arrays are zero-allocated once; every read still goes through the
// stamp check, so cells are never trusted before an explicit write.
class StampedDispatch {
 public:
  void init(std::uint32_t width) {
    width_ = width;
    used_ = 0;
    cell_ = std::make_unique<std::uint32_t[]>(width);
    stamp_ = std::make_unique<std::uint32_t[]>(width);
    log_ = std::make_unique<std::uint32_t[]>(width);
  }

  bool exists() const { return width_ != 0; }
  std::uint32_t width() const { return width_; }
  std::uint32_t used() const { return used_; }

  bool valid(Symbol c) const {
    std::uint32_t i = c - 1;
    return c >= 1 && i < width_ && stamp_[i] < used_ && log_[stamp_[i]] == i;
  }

  std::uint32_t get(Symbol c) const {
    assert(valid(c));
    return cell_[c - 1];
  }

  // Writes (or overwrites) the cell for symbol c; out-of-range is a no-op.
  void set(Symbol c, std::uint32_t child) {
    std::uint32_t i = c - 1;
    if (c < 1 || i >= width_) return;
    if (!valid(c)) {
      stamp_[i] = used_;
      log_[used_] = i;
      ++used_;
    }
    cell_[i] = child;
  }

 private:
  std::uint32_t width_ = 0;
  std::uint32_t used_ = 0;  // distinct cells written so far
  std::unique_ptr<std::uint32_t[]> cell_, stamp_, log_;
};

class SuffixTrist {
 public:
  struct QueryStats {
    std::uint64_t symbol_comparisons = 0;
    std::uint64_t bst_fallbacks = 0;
  };

  struct Match {
    enum Kind { kNone, kNode, kRun };
    Kind kind = kNone;
    std::uint32_t node = kNoNode;        // kNode: every leaf below matches
    SuffixNode* lo = nullptr;            // kRun: inclusive member range
    SuffixNode* hi = nullptr;
  };

  // Structural self-checks, counted so replays can demand zero violations.
  struct Hooks {
    std::uint64_t promotions = 0;
    std::uint64_t promotion_children_checked = 0;
    std::uint64_t promotion_bound_violations = 0;  // child > sigma-k+1 at promotion
    std::uint64_t stagings_completed = 0;
    std::uint64_t staging_budget_violations = 0;   // staging outlived ceil(k/2)
    std::uint64_t counters_verified = 0;
    std::uint64_t counter_mismatches = 0;          // staged init != true subtree count
    std::uint64_t corollary_checks = 0;
    std::uint64_t corollary_violations = 0;        // ancestor array unfinished at promotion
    std::uint64_t query_fallback_violations = 0;   // >1 ordered-map fallback per query
  };

  struct Stats {
    std::uint32_t sigma_nodes = 0;
    std::uint32_t branching = 0;
    std::uint32_t non_branching = 0;
    std::uint32_t sigma_leaves = 0;
    std::uint32_t run_objects = 0;
    std::uint32_t run_members = 0;
    std::uint64_t dispatch_cells = 0;
    std::uint64_t counter_entries = 0;
    std::uint64_t child_entries = 0;
  };

  explicit SuffixTrist(std::uint32_t sigma_hint, bool validate = true)
      : sigma_eff_(std::max<std::uint32_t>(1, sigma_hint)),
        validate_(validate),
        oracle_(text_) {
    class_.assign(oracle_.node_count(), NodeClass::kOrdinary);
    SuffixNode* sn = &pool_.emplace_back();
    sn->anchor = 0;
    sn->tag = order_.insert_first();
    suffix_nodes_.push_back(sn);
    head_ = new_run();
    head_->set_root(sn);
    maybe_promote_root();
    drain_promotions();
  }

  SuffixTrist(const SuffixTrist&) = delete;
  SuffixTrist& operator=(const SuffixTrist&) = delete;

  const Text& text() const { return text_; }
  const OnlineSuffixTree& oracle() const { return oracle_; }
  std::uint32_t sigma_eff() const { return sigma_eff_; }
  std::uint32_t suffix_count() const { return text_.size() + 1; }
  const Hooks& hooks() const { return hooks_; }
  Bis* chain_head() const { return head_; }
  const SuffixNode* suffix_node(std::uint32_t anchor) const {
    return suffix_nodes_[anchor];
  }

  NodeClass node_class(std::uint32_t v) const {
    return v < class_.size() ? class_[v] : NodeClass::kOrdinary;
  }
  bool is_sigma(std::uint32_t v) const {
    return node_class(v) != NodeClass::kOrdinary;
  }
  Symbol separator(std::uint32_t v) const { return sigma_.at(v).separator; }
  std::uint32_t sigma_child(std::uint32_t v) const { return sigma_.at(v).sigma_child; }

  // Grows the text at the front by one symbol and reconciles everything.
  void extend(RawSymbol raw) {
    text_.prepend(raw);  // validates first; state untouched on throw
    auto ev = oracle_.extend();
    class_.resize(oracle_.node_count(), NodeClass::kOrdinary);
    const std::uint32_t a = text_.size();  // anchor of the new whole-text suffix

    if (ev.new_internal != kNoNode) handle_split(ev);

    Bis* b = route(ev.leaf_parent, a);
    insert_member(b, a);
    register_new_edge(ev, a);
    counter_step(b, ev, a);
    fill_step(b);
    maybe_promote_root();
    drain_promotions();
  }

  Match query(const std::vector<Symbol>& pat, QueryStats* qs = nullptr) const {
    QueryStats local;
    QueryStats& st = qs ? *qs : local;
    Match m = query_impl(pat, st);
    if (st.bst_fallbacks > 1 && text_.sigma() <= sigma_eff_)
      ++hooks_.query_fallback_violations;
    return m;
  }

  // Sorted 1-based front positions of every suffix a match stands for.
  std::vector<std::uint32_t> occurrences(const Match& m) const {
    std::vector<std::uint32_t> out;
    if (m.kind == Match::kNode) {
      std::vector<std::uint32_t> stk{m.node};
      while (!stk.empty()) {
        std::uint32_t v = stk.back();
        stk.pop_back();
        if (oracle_.is_leaf(v)) {
          out.push_back(text_.front_position(oracle_.node(v).leaf_anchor));
          continue;
        }
        for (const auto& [sym, kid] : oracle_.node(v).children) stk.push_back(kid);
      }
    } else if (m.kind == Match::kRun) {
      for (SuffixNode* x = m.lo;; x = avl::next_in_run(x)) {
        out.push_back(text_.front_position(x->anchor));
        if (x == m.hi) break;
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  Stats stats() const {
    Stats s;
    for (const auto& [v, d] : sigma_) {
      ++s.sigma_nodes;
      if (d.cls == NodeClass::kBranching) ++s.branching;
      if (d.cls == NodeClass::kNonBranching) ++s.non_branching;
      if (d.cls == NodeClass::kSigmaLeaf) ++s.sigma_leaves;
      s.dispatch_cells += d.dispatch.width();
      s.counter_entries += d.counters.size();
    }
    for (Bis* b = head_; b; b = b->next) {
      ++s.run_objects;
      s.run_members += b->size();
    }
    for (std::uint32_t v = 0; v < oracle_.node_count(); ++v)
      s.child_entries += oracle_.node(v).children.size();
    return s;
  }

 private:
  struct SigmaData {
    NodeClass cls = NodeClass::kSigmaLeaf;
    // heavy leaf
    Bis* bis = nullptr;
    // non-branching
    std::uint32_t sigma_child = kNoNode;
    Symbol separator = 0;
    Bis* left_flank = nullptr;
    Bis* right_flank = nullptr;
    // branching: gap runs keyed by the preceding heavy child's edge symbol
    // (key 0 = the run before the first heavy child)
    std::map<Symbol, Bis*> gaps;
    std::uint32_t probe1 = kNoNode, probe2 = kNoNode;
    StampedDispatch dispatch;
    std::uint32_t live_cells = 0;  // children whose symbol fits the array
    Symbol fill_cursor = 0;
    bool fill_done = false;
    // initialized leaf counters of non-heavy children, keyed by edge symbol
    std::map<Symbol, std::uint32_t> counters;
    bool staging = false;
    Symbol stage_cursor = 0;
    std::uint32_t stage_k0 = 0;
    std::uint32_t stage_used = 0;
  };

  Bis* new_run() { return &bis_pool_.emplace_back(); }

  void link_after(Bis* pos, Bis* nb) {
    nb->prev = pos;
    nb->next = pos->next;
    if (pos->next) pos->next->prev = nb;
    pos->next = nb;
  }

  bool internal(std::uint32_t v) const { return !oracle_.is_leaf(v); }

  std::uint32_t extreme_leaf(std::uint32_t v, bool leftmost) const {
    while (internal(v)) {
      const auto& kids = oracle_.node(v).children;
      v = leftmost ? kids.begin()->second : kids.rbegin()->second;
    }
    return v;
  }

  std::uint32_t subtree_leaves(std::uint32_t v) const {
    std::uint32_t n = 0;
    std::vector<std::uint32_t> stk{v};
    while (!stk.empty()) {
      std::uint32_t x = stk.back();
      stk.pop_back();
      if (!internal(x)) {
        ++n;
        continue;
      }
      for (const auto& [sym, kid] : oracle_.node(x).children) stk.push_back(kid);
    }
    return n;
  }

  Bis* run_of_node(std::uint32_t v) const {
    return Bis::owner_of(suffix_nodes_[oracle_.node(v).hint_anchor]);
  }

  // Members of `b` whose suffix carries `s` at `offset` (all members agree
  // on everything before `offset`, so the symbol is monotone over the run).
  std::uint32_t count_symbol_members(const Bis* b, std::uint32_t offset,
                                     Symbol s) const {
    auto below = [&](bool inclusive) {
      std::uint32_t acc = 0;
      SuffixNode* cur = b->root();
      while (cur) {
        Symbol cs = text_.suffix_symbol(cur->anchor, offset);
        if (cs < s || (inclusive && cs == s)) {
          acc += avl::sz(cur->left) + 1;
          cur = cur->right;
        } else {
          cur = cur->left;
        }
      }
      return acc;
    };
    return below(true) - below(false);
  }

  // --- extension pipeline ----------------------------------------------

  // A fresh internal node split an edge: classify it, and retarget
  // everything at the old parent that referred to the demoted child.
  void handle_split(const OnlineSuffixTree::Extension& ev) {
    const std::uint32_t v = ev.new_internal;
    const std::uint32_t w = ev.split_child;
    const std::uint32_t x = oracle_.node(v).parent;
    const Symbol c = oracle_.edge_symbol(v);

    if (is_sigma(x)) {
      SigmaData& xd = sigma_.at(x);
      if (xd.cls == NodeClass::kBranching) {
        xd.dispatch.set(c, v);
        xd.fill_done = xd.dispatch.used() >= xd.live_cells;
        if (xd.probe1 == w) xd.probe1 = v;
        if (xd.probe2 == w) xd.probe2 = v;
      } else if (xd.cls == NodeClass::kNonBranching && xd.sigma_child == w) {
        xd.sigma_child = v;
      }
      // counters are keyed by the edge symbol, which the split preserves,
      // so the demoted child's count already belongs to the new node
    }

    if (!is_sigma(w)) return;

    // the new node sits above a heavy child, so it is heavy from birth,
    // with that child as its only heavy child
    class_[v] = NodeClass::kNonBranching;
    SigmaData& vd = sigma_[v];
    vd.cls = NodeClass::kNonBranching;
    vd.sigma_child = w;
    vd.separator = oracle_.edge_symbol(w);

    // fresh empty flanks, nested just inside the parent's runs around w
    assert(is_sigma(x) && sigma_.at(x).cls != NodeClass::kSigmaLeaf);
    SigmaData& xd = sigma_.at(x);
    Bis *left_nb, *right_nb;
    if (xd.cls == NodeClass::kNonBranching) {
      assert(xd.sigma_child == v);
      left_nb = xd.left_flank;
      right_nb = xd.right_flank;
    } else {
      auto it = xd.gaps.find(c);
      assert(it != xd.gaps.end() && it != xd.gaps.begin());
      right_nb = it->second;
      left_nb = std::prev(it)->second;
    }
    vd.left_flank = new_run();
    vd.right_flank = new_run();
    vd.left_flank->owner = v;
    vd.right_flank->owner = v;
    vd.left_flank->fill_node = left_nb->fill_node;
    vd.right_flank->fill_node = left_nb->fill_node;
    link_after(left_nb, vd.left_flank);
    link_after(right_nb->prev, vd.right_flank);
  }

  // The run the new suffix belongs to, decided at its lowest heavy ancestor.
  Bis* route(std::uint32_t p, std::uint32_t a) const {
    if (!is_sigma(p)) {
      // all leaves below a light node share one run; reach it through any
      // leaf that existed before this extension
      return run_of_node(p);
    }
    const SigmaData& pd = sigma_.at(p);
    if (pd.cls == NodeClass::kSigmaLeaf) return pd.bis;
    Symbol c = text_.suffix_symbol(a, oracle_.node(p).depth);
    if (pd.cls == NodeClass::kNonBranching) {
      assert(c != pd.separator);
      return c < pd.separator ? pd.left_flank : pd.right_flank;
    }
    auto it = pd.gaps.upper_bound(c);
    assert(it != pd.gaps.begin());
    return std::prev(it)->second;
  }

  void insert_member(Bis* b, std::uint32_t a) {
    SuffixNode* nn = &pool_.emplace_back();
    nn->anchor = a;
    const Symbol a0 = text_.suffix_symbol(a, 0);
    auto before = [&](SuffixNode* x) {
      Symbol b0 = text_.suffix_symbol(x->anchor, 0);
      if (a0 != b0) return a0 < b0;
      // equal heads: both one-shorter suffixes already carry order tags
      return OrderList::before(suffix_nodes_[a - 1]->tag,
                               suffix_nodes_[x->anchor - 1]->tag);
    };
    SuffixNode *pred = nullptr, *succ = nullptr;
    b->insert(nn, before, &pred, &succ);
    if (pred) {
      nn->tag = order_.insert_after(pred->tag);
    } else if (succ) {
      nn->tag = order_.insert_before(succ->tag);
    } else {
      // was empty: the true list neighbors live in the nearest occupied runs
      OrderList::Node* left = nullptr;
      for (Bis* q = b->prev; q; q = q->prev)
        if (!q->empty()) {
          left = q->max()->tag;
          break;
        }
      if (left) {
        nn->tag = order_.insert_after(left);
      } else {
        OrderList::Node* right = nullptr;
        for (Bis* q = b->next; q; q = q->next)
          if (!q->empty()) {
            right = q->min()->tag;
            break;
          }
        nn->tag = right ? order_.insert_before(right) : order_.insert_first();
      }
    }
    assert(suffix_nodes_.size() == a);
    suffix_nodes_.push_back(nn);
  }

  // A brand-new edge out of a branching node gets its cell right away.
  void register_new_edge(const OnlineSuffixTree::Extension& ev, std::uint32_t a) {
    if (ev.new_internal != kNoNode) return;  // parent edge set existed before
    const std::uint32_t p = ev.leaf_parent;
    if (!is_sigma(p)) return;
    SigmaData& pd = sigma_.at(p);
    if (pd.cls != NodeClass::kBranching) return;
    Symbol c = text_.suffix_symbol(a, oracle_.node(p).depth);
    if (c >= 1 && c <= pd.dispatch.width()) {
      ++pd.live_cells;
      pd.dispatch.set(c, ev.new_leaf);
      pd.fill_done = pd.dispatch.used() >= pd.live_cells;
    }
  }

  void counter_step(Bis* b, const OnlineSuffixTree::Extension& ev,
                    std::uint32_t a) {
    const std::uint32_t u = b->owner;
    if (u == kNoNode) return;  // no heavy ancestor yet
    SigmaData& ud = sigma_.at(u);
    const Symbol s = text_.suffix_symbol(a, oracle_.node(u).depth);
    const std::uint32_t r = oracle_.child_by_symbol(u, s);
    assert(r != kNoNode && !is_sigma(r));
    if (r == ev.new_leaf) {
      ud.counters[s] = 1;  // fresh leaf child: exact by construction
    } else {
      auto it = ud.counters.find(s);
      if (it != ud.counters.end()) {
        ++it->second;
        if (it->second >= sigma_eff_ && internal(r)) pending_.push_back(r);
      } else {
        assert(ud.staging);  // still awaiting its staged initialization
      }
    }
    if (ud.staging) advance_staging(u, ud);
  }

  // Initializes up to two not-yet-counted children per insertion handled at
  // a freshly promoted node; counts come from rank queries on the runs.
  void advance_staging(std::uint32_t u, SigmaData& ud) {
    ++ud.stage_used;
    const std::uint32_t depth = oracle_.node(u).depth;
    int budget = 2;
    const auto& kids = oracle_.node(u).children;
    // cursor 0 doubles as "not started"; revisiting the sentinel child is free
    auto it = ud.stage_cursor == 0 ? kids.begin() : kids.upper_bound(ud.stage_cursor);
    while (budget > 0 && it != kids.end()) {
      const Symbol s = it->first;
      const std::uint32_t child = it->second;
      if (!is_sigma(child) && !ud.counters.count(s)) {
        std::uint32_t cnt = count_symbol_members(run_of_node(child), depth, s);
        ud.counters[s] = cnt;
        --budget;
        if (validate_) {
          ++hooks_.counters_verified;
          if (cnt != subtree_leaves(child)) ++hooks_.counter_mismatches;
        }
        if (cnt >= sigma_eff_ && internal(child)) pending_.push_back(child);
      }
      ud.stage_cursor = s;
      ++it;
    }
    if (it == kids.end()) {
      ud.staging = false;
      ++hooks_.stagings_completed;
      // children arriving mid-staging fund their own scan step, so the
      // bound is taken against the child count at completion
      const std::uint32_t k = static_cast<std::uint32_t>(kids.size());
      if (ud.stage_used > (k + 1) / 2) ++hooks_.staging_budget_violations;
    }
  }

  void fill_step(Bis* b) {
    const std::uint32_t f = b->fill_node;
    if (f == kNoNode) return;
    SigmaData& fd = sigma_.at(f);
    if (fd.fill_done) {
      b->fill_node = kNoNode;  // nothing left to attribute here
      return;
    }
    const auto& kids = oracle_.node(f).children;
    auto it = fd.fill_cursor == 0 ? kids.begin() : kids.upper_bound(fd.fill_cursor);
    for (; it != kids.end(); ++it) {
      const Symbol s = it->first;
      if (s == kSentinel) continue;
      if (s > fd.dispatch.width()) break;
      fd.fill_cursor = s;
      if (!fd.dispatch.valid(s)) {
        fd.dispatch.set(s, it->second);
        break;
      }
    }
    fd.fill_done = fd.dispatch.used() >= fd.live_cells;
  }

  void maybe_promote_root() {
    if (is_sigma(OnlineSuffixTree::kRoot) || suffix_count() < sigma_eff_) return;
    assert(suffix_count() == sigma_eff_);
    // before any promotion the whole collection is a single run
    assert(head_->next == nullptr && head_->owner == kNoNode);
    class_[OnlineSuffixTree::kRoot] = NodeClass::kSigmaLeaf;
    SigmaData& rd = sigma_[OnlineSuffixTree::kRoot];
    rd.cls = NodeClass::kSigmaLeaf;
    rd.bis = head_;
    head_->owner = OnlineSuffixTree::kRoot;
    begin_staging(OnlineSuffixTree::kRoot, rd);
    check_promotion_bound(OnlineSuffixTree::kRoot);
  }

  void begin_staging(std::uint32_t u, SigmaData& ud) {
    ud.staging = true;
    ud.stage_cursor = 0;
    ud.stage_used = 0;
    ud.stage_k0 = static_cast<std::uint32_t>(oracle_.node(u).children.size());
  }

  // A node promoted with k children holds exactly sigma_eff leaves, so each
  // child holds at most sigma_eff - k + 1 (the other k-1 hold one each).
  void check_promotion_bound(std::uint32_t u) {
    ++hooks_.promotions;
    const auto& kids = oracle_.node(u).children;
    const std::uint32_t k = static_cast<std::uint32_t>(kids.size());
    std::vector<std::uint32_t> counts;
    std::uint32_t total = 0;
    for (const auto& [sym, kid] : kids) {
      counts.push_back(subtree_leaves(kid));
      total += counts.back();
    }
    // with sigma_eff == 1 a split-born node starts with two leaves already
    bool total_ok =
        total == sigma_eff_ || (sigma_eff_ == 1 && total <= 2);
    if (!total_ok) ++hooks_.promotion_bound_violations;
    const std::uint32_t bound = std::max(sigma_eff_, total) - k + 1;
    for (std::uint32_t cnt : counts) {
      ++hooks_.promotion_children_checked;
      if (cnt > bound) ++hooks_.promotion_bound_violations;
    }
  }

  void drain_promotions() {
    for (std::size_t i = 0; i < pending_.size(); ++i) {
      std::uint32_t u = pending_[i];
      if (!is_sigma(u) && internal(u)) promote(u);
    }
    pending_.clear();
  }

  // Splits `b` around the inclusive member range [lo, hi], which becomes
  // the promoted node's run; `b` keeps the left remainder in place.
  std::pair<Bis*, Bis*> split_run(Bis* b, SuffixNode* lo, SuffixNode* hi,
                                  std::uint32_t u) {
    SuffixNode* whole = b->root();
    b->set_root(nullptr);
    auto [left, rest] = avl::split_before(whole, lo->tag);
    SuffixNode* mid_root = rest;
    SuffixNode* right_root = nullptr;
    if (OrderList::Node* up = OrderList::next(hi->tag)) {
      auto [m2, r2] = avl::split_before(rest, up);
      mid_root = m2;
      right_root = r2;
    }
    b->set_root(left);
    Bis* mid = new_run();
    mid->set_root(mid_root);
    mid->owner = u;
    mid->fill_node = b->fill_node;
    Bis* right = new_run();
    right->set_root(right_root);
    right->owner = b->owner;
    right->fill_node = b->fill_node;
    link_after(b, mid);
    link_after(mid, right);
    return {mid, right};
  }

  void promote(std::uint32_t u) {
    check_promotion_bound(u);
    SuffixNode* lo = suffix_nodes_[oracle_.node(extreme_leaf(u, true)).leaf_anchor];
    SuffixNode* hi = suffix_nodes_[oracle_.node(extreme_leaf(u, false)).leaf_anchor];
    Bis* b = Bis::owner_of(lo);
    assert(Bis::owner_of(hi) == b);
    const std::uint32_t o = b->owner;
    assert(o != kNoNode);  // the root is promoted through its own path
    auto [mid, right] = split_run(b, lo, hi, u);

    class_[u] = NodeClass::kSigmaLeaf;
    SigmaData& ud = sigma_[u];
    ud.cls = NodeClass::kSigmaLeaf;
    ud.bis = mid;
    begin_staging(u, ud);

    const Symbol cu = oracle_.edge_symbol(u);
    SigmaData& od = sigma_.at(o);
    od.counters.erase(cu);  // heavy children carry no counter

    switch (od.cls) {
      case NodeClass::kSigmaLeaf: {
        // the parent keeps exactly one heavy child and two flanks
        assert(b == od.bis);
        od.cls = NodeClass::kNonBranching;
        class_[o] = NodeClass::kNonBranching;
        od.sigma_child = u;
        od.separator = cu;
        od.left_flank = b;
        od.right_flank = right;
        od.bis = nullptr;
        break;
      }
      case NodeClass::kNonBranching: {
        // second heavy child: the parent starts dispatching
        assert(u != od.sigma_child);
        assert(b == od.left_flank || b == od.right_flank);
        Bis* other = b == od.left_flank ? od.right_flank : od.left_flank;
        for (Bis* piece : {b, right, other}) {
          ++hooks_.corollary_checks;
          std::uint32_t fn = piece->fill_node;
          if (fn != kNoNode && !sigma_.at(fn).fill_done)
            ++hooks_.corollary_violations;
          piece->fill_node = o;
        }
        const Symbol cw = od.separator;
        if (b == od.left_flank) {
          od.gaps = {{0, b}, {cu, right}, {cw, od.right_flank}};
        } else {
          od.gaps = {{0, od.left_flank}, {cw, b}, {cu, right}};
        }
        od.probe1 = od.sigma_child;
        od.probe2 = u;
        od.dispatch.init(std::max(sigma_eff_, text_.sigma()));
        od.live_cells = 0;
        for (const auto& [sym, kid] : oracle_.node(o).children)
          if (sym >= 1 && sym <= od.dispatch.width()) ++od.live_cells;
        od.fill_cursor = 0;
        od.fill_done = od.live_cells == 0;
        od.cls = NodeClass::kBranching;
        class_[o] = NodeClass::kBranching;
        od.sigma_child = kNoNode;
        od.left_flank = od.right_flank = nullptr;
        break;
      }
      case NodeClass::kBranching: {
        // one gap run split into two; the registry gains the new boundary
        auto [it, fresh] = od.gaps.emplace(cu, right);
        assert(fresh);
        (void)it;
        break;
      }
      default:
        assert(false && "light nodes own no runs");
    }
  }

  // --- query -------------------------------------------------------------

  static Match run_result(
      const std::optional<std::pair<SuffixNode*, SuffixNode*>>& r) {
    if (!r) return {};
    return {Match::kRun, kNoNode, r->first, r->second};
  }

  // Verifies pattern symbols along the edge into `w` starting at offset t;
  // returns the match if the pattern ends on the edge, a miss on mismatch,
  // or nothing when the walk should continue below `w`.
  std::optional<Match> descend_edge(std::uint32_t w, std::uint32_t& t,
                                    const std::vector<Symbol>& pat,
                                    QueryStats& st) const {
    const std::uint32_t m = static_cast<std::uint32_t>(pat.size());
    const std::uint32_t end = std::min(oracle_.node(w).depth, m);
    for (std::uint32_t i = t + 1; i < end; ++i) {
      ++st.symbol_comparisons;
      if (oracle_.path_symbol(w, i) != pat[i]) return Match{};
    }
    if (m <= oracle_.node(w).depth) return Match{Match::kNode, w, nullptr, nullptr};
    t = oracle_.node(w).depth;
    return std::nullopt;
  }

  Match query_impl(const std::vector<Symbol>& pat, QueryStats& st) const {
    const std::uint32_t m = static_cast<std::uint32_t>(pat.size());
    std::uint32_t v = OnlineSuffixTree::kRoot;
    std::uint32_t t = 0;
    for (;;) {
      if (t >= m) return {Match::kNode, v, nullptr, nullptr};
      if (!is_sigma(v)) {
        // only the pre-promotion root: everything sits in one run
        assert(v == OnlineSuffixTree::kRoot);
        return run_result(
            run_of_node(v)->search_pattern(text_, pat, t, &st.symbol_comparisons));
      }
      const SigmaData& vd = sigma_.at(v);
      const Symbol c = pat[t];
      switch (vd.cls) {
        case NodeClass::kSigmaLeaf:
          return run_result(
              vd.bis->search_pattern(text_, pat, t, &st.symbol_comparisons));
        case NodeClass::kNonBranching: {
          ++st.symbol_comparisons;
          if (c == vd.separator) {
            if (auto r = descend_edge(vd.sigma_child, t, pat, st)) return *r;
            v = vd.sigma_child;
            continue;
          }
          Bis* b = c < vd.separator ? vd.left_flank : vd.right_flank;
          return run_result(
              b->search_pattern(text_, pat, t, &st.symbol_comparisons));
        }
        case NodeClass::kBranching: {
          std::uint32_t w = kNoNode;
          bool resolved = false;
          if (c >= 1 && c <= vd.dispatch.width()) {
            if (vd.dispatch.valid(c)) {
              w = vd.dispatch.get(c);
              resolved = true;
            } else if (vd.fill_done) {
              resolved = true;  // complete array: no edge with this symbol
            }
          }
          if (!resolved) {
            for (std::uint32_t p : {vd.probe1, vd.probe2}) {
              if (p == kNoNode) continue;
              ++st.symbol_comparisons;
              if (oracle_.edge_symbol(p) == c) {
                w = p;
                resolved = true;
                break;
              }
            }
          }
          if (!resolved) {
            ++st.bst_fallbacks;
            st.symbol_comparisons += std::bit_width(oracle_.node(v).children.size());
            w = oracle_.child_by_symbol(v, c);
          }
          if (w == kNoNode) return {};
          if (is_sigma(w)) {
            if (auto r = descend_edge(w, t, pat, st)) return *r;
            v = w;
            continue;
          }
          // light target: its whole subtree shares one run
          Bis* b = run_of_node(w);
          return run_result(
              b->search_pattern(text_, pat, t, &st.symbol_comparisons));
        }
        default:
          assert(false);
          return {};
      }
    }
  }

  const std::uint32_t sigma_eff_;
  const bool validate_;
  Text text_;
  OnlineSuffixTree oracle_;
  OrderList order_;
  std::deque<SuffixNode> pool_;
  std::deque<Bis> bis_pool_;
  std::vector<SuffixNode*> suffix_nodes_;  // anchor -> member
  std::vector<NodeClass> class_;
  std::unordered_map<std::uint32_t, SigmaData> sigma_;
  std::vector<std::uint32_t> pending_;
  Bis* head_ = nullptr;
  mutable Hooks hooks_;
};

}  // namespace stray
