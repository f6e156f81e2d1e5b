#pragma once

#include <cstddef>
#include <cstdint>

namespace aucstream {

struct StatsNode;

// A tree node can sit in two score-ordered lists at once (the all-positives
// list and the compressed list), so it carries one link slot per list.
enum class ListId : int { positives = 0, compressed = 1 };

struct ListLink {
    StatsNode* next = nullptr;
    StatsNode* prev = nullptr;
    // Label totals over tree nodes in [key(self), key(next)) — the gap up to
    // but excluding the next member. The last member always has zero gaps.
    std::int64_t gap_pos = 0;
    std::int64_t gap_neg = 0;
    bool linked = false;
};

// Doubly linked list over tree nodes, sorted by key, with per-member gap
// counters. Splice and unlink are O(1) and keep the gap sums telescoping:
// the total over all members never changes except through explicit bumps.
class WeightedList {
public:
    explicit WeightedList(ListId id) : id_(id) {}

    // The tree's two sentinel nodes become the permanent first/last members.
    void attach_sentinels(StatsNode* lo, StatsNode* hi);

    StatsNode* first() const { return head_; }
    StatsNode* last() const { return tail_; }
    StatsNode* next(const StatsNode* v) const;
    StatsNode* prev(const StatsNode* v) const;
    bool contains(const StatsNode* v) const;
    std::size_t size() const { return size_; }
    ListId id() const { return id_; }

    std::int64_t gap_pos(const StatsNode* v) const;
    std::int64_t gap_neg(const StatsNode* v) const;
    void bump_gap_pos(StatsNode* v, std::int64_t delta);
    void bump_gap_neg(StatsNode* v, std::int64_t delta);

    // Splices v after u. p and n are the label totals over [key(u), key(v));
    // u keeps them and v inherits the remainder of u's old gap.
    // Throws std::logic_error on key-order violations or gap underflow.
    void add_after(StatsNode* u, StatsNode* v, std::int64_t p, std::int64_t n);

    // Unlinks v, merging its gaps into its predecessor. Sentinels stay put.
    void remove(StatsNode* v);

private:
    ListLink& link(StatsNode* v) const;
    const ListLink& link(const StatsNode* v) const;

    ListId id_;
    StatsNode* head_ = nullptr;
    StatsNode* tail_ = nullptr;
    std::size_t size_ = 0;
};

}  // namespace aucstream
