#include "aucstream/stats_tree.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace aucstream {

NodeKey NodeKey::finite(double score) {
    if (!std::isfinite(score)) {
        throw std::invalid_argument("score must be finite");
    }
    return NodeKey(0, score);
}

double NodeKey::score() const {
    if (tag_ != 0) throw std::logic_error("sentinel key has no score");
    return score_;
}

StatsTree::StatsTree() : pos_list_(ListId::positives) {
    min_sentinel_ = new StatsNode(NodeKey::min_sentinel());
    max_sentinel_ = new StatsNode(NodeKey::max_sentinel());
    root_ = min_sentinel_;
    min_sentinel_->right = max_sentinel_;
    max_sentinel_->parent = min_sentinel_;
    refresh(max_sentinel_);
    refresh(min_sentinel_);
    node_count_ = 2;
    tp_index_.emplace(min_sentinel_->key, min_sentinel_);
    tp_index_.emplace(max_sentinel_->key, max_sentinel_);
    pos_list_.attach_sentinels(min_sentinel_, max_sentinel_);
}

StatsTree::~StatsTree() { destroy(root_); }

void StatsTree::destroy(StatsNode* v) {
    if (!v) return;
    destroy(v->left);
    destroy(v->right);
    delete v;
}

void StatsTree::refresh(StatsNode* v) {
    v->height = 1 + std::max(height_of(v->left), height_of(v->right));
    v->acc_pos = v->pos_label + acc_pos_of(v->left) + acc_pos_of(v->right);
    v->acc_neg = v->neg_label + acc_neg_of(v->left) + acc_neg_of(v->right);
}

void StatsTree::replace_child(StatsNode* parent, StatsNode* old_child, StatsNode* new_child) {
    if (!parent) {
        root_ = new_child;
    } else if (parent->left == old_child) {
        parent->left = new_child;
    } else {
        assert(parent->right == old_child);
        parent->right = new_child;
    }
    if (new_child) new_child->parent = parent;
}

StatsNode* StatsTree::rotate_left(StatsNode* v) {
    StatsNode* u = v->right;
    v->right = u->left;
    if (u->left) u->left->parent = v;
    replace_child(v->parent, v, u);
    u->left = v;
    v->parent = u;
    refresh(v);
    refresh(u);
    return u;
}

StatsNode* StatsTree::rotate_right(StatsNode* v) {
    StatsNode* u = v->left;
    v->left = u->right;
    if (u->right) u->right->parent = v;
    replace_child(v->parent, v, u);
    u->right = v;
    v->parent = u;
    refresh(v);
    refresh(u);
    return u;
}

void StatsTree::rebalance_upward(StatsNode* v) {
    while (v) {
        refresh(v);
        const int bf = height_of(v->left) - height_of(v->right);
        if (bf > 1) {
            if (height_of(v->left->left) < height_of(v->left->right)) rotate_left(v->left);
            v = rotate_right(v);
        } else if (bf < -1) {
            if (height_of(v->right->right) < height_of(v->right->left)) rotate_right(v->right);
            v = rotate_left(v);
        }
        v = v->parent;
    }
}

StatsNode* StatsTree::find_mutable(NodeKey key) const {
    StatsNode* v = root_;
    while (v) {
        if (key < v->key) {
            v = v->left;
        } else if (v->key < key) {
            v = v->right;
        } else {
            return v;
        }
    }
    return nullptr;
}

const StatsNode* StatsTree::find(NodeKey key) const { return find_mutable(key); }

StatsNode* StatsTree::find_or_insert(NodeKey key) {
    StatsNode* parent = nullptr;
    StatsNode** slot = &root_;
    while (*slot) {
        parent = *slot;
        if (key < parent->key) {
            slot = &parent->left;
        } else if (parent->key < key) {
            slot = &parent->right;
        } else {
            return parent;
        }
    }
    StatsNode* v = new StatsNode(key);
    v->parent = parent;
    *slot = v;
    ++node_count_;
    rebalance_upward(v);
    return v;
}

void StatsTree::erase_node(StatsNode* v) {
    assert(v->pos_label == 0 && v->neg_label == 0);
    assert(!v->links[0].linked && !v->links[1].linked);

    StatsNode* fix_from = nullptr;
    if (!v->left || !v->right) {
        StatsNode* child = v->left ? v->left : v->right;
        fix_from = v->parent;
        replace_child(v->parent, v, child);
    } else {
        // Two children: transplant the in-order successor into v's slot.
        // Pointer surgery, never payload copies — list links and the
        // positive-node index hold node addresses.
        StatsNode* s = v->right;
        while (s->left) s = s->left;
        if (s->parent == v) {
            fix_from = s;
        } else {
            fix_from = s->parent;
            s->parent->left = s->right;
            if (s->right) s->right->parent = s->parent;
            s->right = v->right;
            v->right->parent = s;
        }
        s->left = v->left;
        v->left->parent = s;
        replace_child(v->parent, v, s);
    }
    delete v;
    --node_count_;
    if (fix_from) rebalance_upward(fix_from);
}

HeadStats StatsTree::head_stats(NodeKey key) const {
    HeadStats hs;
    const StatsNode* v = root_;
    while (true) {
        assert(v && "head_stats: no node with this key");
        if (key < v->key) {
            v = v->left;
        } else {
            hs.head_pos += acc_pos_of(v->left);
            hs.head_neg += acc_neg_of(v->left);
            if (v->key == key) return hs;
            hs.head_pos += v->pos_label;
            hs.head_neg += v->neg_label;
            v = v->right;
        }
    }
}

StatsNode* StatsTree::max_pos(double score) const {
    auto it = tp_index_.upper_bound(NodeKey::finite(score));
    --it;  // min sentinel is always below any finite key
    return it->second;
}

StatsNode* StatsTree::add_pos_label(double score) {
    StatsNode* w = max_pos(score);  // validates finiteness
    StatsNode* v = find_or_insert(NodeKey::finite(score));
    v->pos_label += 1;
    rebalance_upward(v);

    if (w != v) {
        // v just became positive: its new label lands in w's gap first, then
        // the splice hands v everything from its own key upward.
        assert(v->pos_label == 1);
        pos_list_.bump_gap_pos(w, +1);
        const HeadStats at_w = head_stats(w->key);
        const HeadStats at_v = head_stats(v->key);
        pos_list_.add_after(w, v, at_v.head_pos - at_w.head_pos, at_v.head_neg - at_w.head_neg);
        tp_index_.emplace(v->key, v);
    } else {
        pos_list_.bump_gap_pos(v, +1);
    }
    ++total_pos_;
    return v;
}

void StatsTree::remove_pos_label(double score) {
    StatsNode* v = find_mutable(NodeKey::finite(score));
    if (!v || v->pos_label < 1) {
        throw std::invalid_argument("window has no positive entry with this score");
    }
    v->pos_label -= 1;
    rebalance_upward(v);
    pos_list_.bump_gap_pos(v, -1);
    if (v->pos_label == 0) {
        assert(!v->links[static_cast<int>(ListId::compressed)].linked);
        pos_list_.remove(v);
        tp_index_.erase(v->key);
    }
    if (v->pos_label == 0 && v->neg_label == 0) {
        erase_node(v);
    }
    --total_pos_;
}

StatsNode* StatsTree::add_neg_label(double score) {
    StatsNode* v = find_or_insert(NodeKey::finite(score));
    v->neg_label += 1;
    rebalance_upward(v);
    pos_list_.bump_gap_neg(max_pos(score), +1);
    ++total_neg_;
    return v;
}

void StatsTree::remove_neg_label(double score) {
    StatsNode* v = find_mutable(NodeKey::finite(score));
    if (!v || v->neg_label < 1) {
        throw std::invalid_argument("window has no negative entry with this score");
    }
    v->neg_label -= 1;
    rebalance_upward(v);
    pos_list_.bump_gap_neg(max_pos(score), -1);
    if (v->pos_label == 0 && v->neg_label == 0) {
        erase_node(v);
    }
    --total_neg_;
}

namespace {

struct AggregateCheck {
    std::int64_t pos = 0;
    std::int64_t neg = 0;
    int height = 0;
    bool ok = true;
    std::string error;
};

AggregateCheck check_subtree(const StatsNode* v) {
    AggregateCheck r;
    if (!v) return r;
    AggregateCheck l = check_subtree(v->left);
    AggregateCheck rr = check_subtree(v->right);
    if (!l.ok) return l;
    if (!rr.ok) return rr;
    r.pos = l.pos + rr.pos + v->pos_label;
    r.neg = l.neg + rr.neg + v->neg_label;
    r.height = 1 + std::max(l.height, rr.height);
    if (v->acc_pos != r.pos || v->acc_neg != r.neg) {
        r.ok = false;
        r.error = "subtree aggregate mismatch";
        return r;
    }
    if (v->height != r.height) {
        r.ok = false;
        r.error = "stale height";
        return r;
    }
    if (std::abs(l.height - rr.height) > 1) {
        r.ok = false;
        r.error = "balance violated";
        return r;
    }
    if ((v->left && v->left->parent != v) || (v->right && v->right->parent != v)) {
        r.ok = false;
        r.error = "broken parent pointer";
        return r;
    }
    return r;
}

}  // namespace

std::string StatsTree::check_integrity() const {
    if (!root_ || root_->parent) return "bad root";
    AggregateCheck agg = check_subtree(root_);
    if (!agg.ok) return agg.error;
    if (total_pos_ != root_->acc_pos || total_neg_ != root_->acc_neg) {
        return "stored totals disagree with root aggregates";
    }

    std::vector<const StatsNode*> order;
    order.reserve(node_count_);
    visit_in_order([&](const StatsNode& n) { order.push_back(&n); });
    if (order.size() != node_count_) return "node count mismatch";
    if (order.front() != min_sentinel_ || order.back() != max_sentinel_) {
        return "sentinels not at the extremes";
    }
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
        if (!(order[i]->key < order[i + 1]->key)) return "in-order keys not strictly increasing";
    }
    for (const StatsNode* n : order) {
        if (n->pos_label < 0 || n->neg_label < 0) return "negative label counter";
        if (n->key.is_sentinel()) {
            if (n->pos_label != 0 || n->neg_label != 0) return "sentinel carries labels";
        } else if (n->pos_label + n->neg_label < 1) {
            return "empty non-sentinel node";
        }
        const bool should_index = n->is_positive() || n->key.is_sentinel();
        auto it = tp_index_.find(n->key);
        const bool indexed = it != tp_index_.end() && it->second == n;
        if (should_index != indexed) return "positive-node index out of sync";
        if (should_index != pos_list_.contains(n)) return "positive list membership out of sync";
    }
    if (tp_index_.size() != pos_list_.size()) return "index/list size mismatch";

    // Gap counters of the all-positives list, recomputed definitionally.
    const StatsNode* u = pos_list_.first();
    if (u != min_sentinel_ || pos_list_.last() != max_sentinel_) {
        return "positive list sentinels misplaced";
    }
    std::int64_t sum_pos = 0;
    std::int64_t sum_neg = 0;
    while (const StatsNode* w = pos_list_.next(u)) {
        const HeadStats at_u = head_stats(u->key);
        const HeadStats at_w = head_stats(w->key);
        if (pos_list_.gap_pos(u) != at_w.head_pos - at_u.head_pos) {
            return "positive list gap_pos inconsistent";
        }
        if (pos_list_.gap_neg(u) != at_w.head_neg - at_u.head_neg) {
            return "positive list gap_neg inconsistent";
        }
        if (pos_list_.gap_pos(u) != u->pos_label) {
            return "positive list gap_pos != own label count";
        }
        sum_pos += pos_list_.gap_pos(u);
        sum_neg += pos_list_.gap_neg(u);
        u = w;
    }
    if (pos_list_.gap_pos(u) != 0 || pos_list_.gap_neg(u) != 0) {
        return "last list member has nonzero gaps";
    }
    if (sum_pos != total_pos_ || sum_neg != total_neg_) {
        return "positive list gap totals disagree with window totals";
    }
    return {};
}

}  // namespace aucstream
