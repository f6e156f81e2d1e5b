#include "aucstream/weighted_list.hpp"

#include <stdexcept>

#include "aucstream/stats_tree.hpp"

namespace aucstream {

ListLink& WeightedList::link(StatsNode* v) const {
    return v->links[static_cast<int>(id_)];
}

const ListLink& WeightedList::link(const StatsNode* v) const {
    return v->links[static_cast<int>(id_)];
}

void WeightedList::attach_sentinels(StatsNode* lo, StatsNode* hi) {
    if (head_ || tail_) throw std::logic_error("sentinels already attached");
    head_ = lo;
    tail_ = hi;
    link(lo) = ListLink{hi, nullptr, 0, 0, true};
    link(hi) = ListLink{nullptr, lo, 0, 0, true};
    size_ = 2;
}

StatsNode* WeightedList::next(const StatsNode* v) const { return link(v).next; }
StatsNode* WeightedList::prev(const StatsNode* v) const { return link(v).prev; }
bool WeightedList::contains(const StatsNode* v) const { return link(v).linked; }

std::int64_t WeightedList::gap_pos(const StatsNode* v) const { return link(v).gap_pos; }
std::int64_t WeightedList::gap_neg(const StatsNode* v) const { return link(v).gap_neg; }

void WeightedList::bump_gap_pos(StatsNode* v, std::int64_t delta) {
    ListLink& l = link(v);
    if (!l.linked) throw std::logic_error("gap bump on unlinked node");
    if (l.gap_pos + delta < 0) throw std::logic_error("gap_pos underflow");
    l.gap_pos += delta;
}

void WeightedList::bump_gap_neg(StatsNode* v, std::int64_t delta) {
    ListLink& l = link(v);
    if (!l.linked) throw std::logic_error("gap bump on unlinked node");
    if (l.gap_neg + delta < 0) throw std::logic_error("gap_neg underflow");
    l.gap_neg += delta;
}

void WeightedList::add_after(StatsNode* u, StatsNode* v, std::int64_t p, std::int64_t n) {
    ListLink& lu = link(u);
    ListLink& lv = link(v);
    if (!lu.linked) throw std::logic_error("list_add: u not a member");
    if (lv.linked) throw std::logic_error("list_add: v already a member");
    StatsNode* w = lu.next;
    if (!w) throw std::logic_error("list_add: cannot add after the last member");
    if (!(u->key < v->key) || !(v->key < w->key)) {
        throw std::logic_error("list_add: key order violated");
    }
    if (p < 0 || n < 0 || p > lu.gap_pos || n > lu.gap_neg) {
        throw std::logic_error("list_add: gap split underflow");
    }

    lv.gap_pos = lu.gap_pos - p;
    lv.gap_neg = lu.gap_neg - n;
    lu.gap_pos = p;
    lu.gap_neg = n;

    lv.prev = u;
    lv.next = w;
    lv.linked = true;
    lu.next = v;
    link(w).prev = v;
    ++size_;
}

void WeightedList::remove(StatsNode* v) {
    ListLink& lv = link(v);
    if (!lv.linked) throw std::logic_error("list_remove: not a member");
    if (v == head_ || v == tail_) throw std::logic_error("list_remove: sentinel");

    StatsNode* u = lv.prev;
    StatsNode* w = lv.next;
    ListLink& lu = link(u);
    lu.gap_pos += lv.gap_pos;
    lu.gap_neg += lv.gap_neg;
    lu.next = w;
    link(w).prev = u;
    lv = ListLink{};
    --size_;
}

}  // namespace aucstream
