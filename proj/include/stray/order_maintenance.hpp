// Order-maintenance list: supports insert-after/before and O(1) worst-case
// order queries between any two members.
//
// Two-level scheme: members sit in buckets of at most 64, buckets carry
// 64-bit labels and members carry 64-bit positions within their bucket, so a
// comparison is two integer compares.  Inserts find a midpoint position;
// when a gap runs out the bucket is respaced, when a bucket fills it is
// split, and when bucket labels run out all bucket labels are redistributed.
// Erase is not provided; the structures that use this only grow.
#pragma once

#include <cassert>
#include <compare>
#include <cstdint>
#include <deque>
#include <vector>

namespace stray {

class OrderList {
 public:
  class Node {
   private:
    friend class OrderList;
    void* bucket_ = nullptr;
    std::uint64_t pos_ = 0;
    std::uint32_t index_ = 0;
  };

  OrderList() = default;
  OrderList(const OrderList&) = delete;
  OrderList& operator=(const OrderList&) = delete;

  std::size_t size() const { return nodes_.size(); }
  Node* first() const { return head_ ? head_->members.front() : nullptr; }
  Node* last() const { return tail_ ? tail_->members.back() : nullptr; }

  Node* insert_first() {
    assert(nodes_.empty());
    Bucket* b = new_bucket(nullptr, nullptr);
    b->label = kLabelMax / 2;
    return insert_at(b, 0);
  }

  Node* insert_after(Node* x) {
    Bucket* b = bucket_of(x);
    return insert_at(b, x->index_ + 1);
  }

  Node* insert_before(Node* x) {
    Bucket* b = bucket_of(x);
    return insert_at(b, x->index_);
  }

  // List neighbors (buckets are never empty).
  static Node* next(const Node* x) {
    const Bucket* b = static_cast<const Bucket*>(x->bucket_);
    if (x->index_ + 1 < b->members.size()) return b->members[x->index_ + 1];
    return b->next ? b->next->members.front() : nullptr;
  }

  static Node* prev(const Node* x) {
    const Bucket* b = static_cast<const Bucket*>(x->bucket_);
    if (x->index_ > 0) return b->members[x->index_ - 1];
    return b->prev ? b->prev->members.back() : nullptr;
  }

  static std::strong_ordering compare(const Node* a, const Node* b) {
    const Bucket* ba = static_cast<const Bucket*>(a->bucket_);
    const Bucket* bb = static_cast<const Bucket*>(b->bucket_);
    if (ba->label != bb->label) return ba->label <=> bb->label;
    return a->pos_ <=> b->pos_;
  }

  static bool before(const Node* a, const Node* b) { return compare(a, b) < 0; }

 private:
  static constexpr std::uint64_t kLabelMax = ~std::uint64_t{0};
  static constexpr std::uint64_t kPosGap = std::uint64_t{1} << 32;
  static constexpr std::size_t kBucketCap = 64;

  struct Bucket {
    std::uint64_t label = 0;
    std::vector<Node*> members;
    Bucket* prev = nullptr;
    Bucket* next = nullptr;
  };

  static Bucket* bucket_of(Node* x) { return static_cast<Bucket*>(x->bucket_); }

  Bucket* new_bucket(Bucket* prev, Bucket* next) {
    buckets_.emplace_back();
    Bucket* b = &buckets_.back();
    b->prev = prev;
    b->next = next;
    (prev ? prev->next : head_) = b;
    (next ? next->prev : tail_) = b;
    b->members.reserve(kBucketCap);
    return b;
  }

  void respace(Bucket* b) {
    for (std::size_t i = 0; i < b->members.size(); ++i) {
      b->members[i]->pos_ = (i + 1) * kPosGap;
      b->members[i]->index_ = static_cast<std::uint32_t>(i);
    }
  }

  // Assign fresh labels to every bucket, evenly across the label space.
  void relabel_all() {
    std::size_t count = 0;
    for (Bucket* b = head_; b; b = b->next) ++count;
    std::uint64_t step = kLabelMax / (count + 1);
    std::uint64_t label = step;
    for (Bucket* b = head_; b; b = b->next, label += step) b->label = label;
  }

  std::uint64_t label_between(Bucket* a, Bucket* c) {
    std::uint64_t lo = a->label;
    std::uint64_t hi = c ? c->label : kLabelMax;
    if (hi - lo < 2) {
      relabel_all();
      lo = a->label;
      hi = c ? c->label : kLabelMax;
      assert(hi - lo >= 2);
    }
    return lo + (hi - lo) / 2;
  }

  void split(Bucket* b) {
    Bucket* hi = new_bucket(b, b->next);
    hi->label = label_between(b, hi->next);
    std::size_t half = b->members.size() / 2;
    hi->members.assign(b->members.begin() + half, b->members.end());
    b->members.resize(half);
    for (Node* m : hi->members) m->bucket_ = hi;
    respace(b);
    respace(hi);
  }

  Node* insert_at(Bucket* b, std::size_t idx) {
    if (b->members.size() == kBucketCap) {
      std::size_t half = b->members.size() / 2;
      split(b);
      if (idx > half) {
        idx -= half;
        b = b->next;
      }
    }
    nodes_.emplace_back();
    Node* n = &nodes_.back();
    n->bucket_ = b;
    b->members.insert(b->members.begin() + idx, n);
    for (std::size_t i = idx; i < b->members.size(); ++i)
      b->members[i]->index_ = static_cast<std::uint32_t>(i);
    std::uint64_t lo = idx > 0 ? b->members[idx - 1]->pos_ : 0;
    std::uint64_t hi = idx + 1 < b->members.size() ? b->members[idx + 1]->pos_
                                                   : lo + 2 * kPosGap;
    if (hi - lo < 2) {
      respace(b);
      return n;
    }
    n->pos_ = lo + (hi - lo) / 2;
    return n;
  }

  std::deque<Node> nodes_;    // stable addresses
  std::deque<Bucket> buckets_;
  Bucket* head_ = nullptr;
  Bucket* tail_ = nullptr;
};

}  // namespace stray
