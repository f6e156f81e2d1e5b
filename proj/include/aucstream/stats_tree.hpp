#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "aucstream/weighted_list.hpp"

namespace aucstream {

// Key of a tree node: a finite score, or one of the two permanent sentinels
// that sit below and above every finite score. Sentinels are distinguished
// variants rather than extreme float values, so genuine infinities in the
// input can be rejected cleanly.
class NodeKey {
public:
    static NodeKey min_sentinel() { return NodeKey(-1, 0.0); }
    static NodeKey max_sentinel() { return NodeKey(+1, 0.0); }
    static NodeKey finite(double score);

    bool is_min_sentinel() const { return tag_ < 0; }
    bool is_max_sentinel() const { return tag_ > 0; }
    bool is_sentinel() const { return tag_ != 0; }
    bool is_finite() const { return tag_ == 0; }
    double score() const;  // finite keys only

    friend bool operator<(const NodeKey& a, const NodeKey& b) {
        if (a.tag_ != b.tag_) return a.tag_ < b.tag_;
        return a.tag_ == 0 && a.score_ < b.score_;
    }
    friend bool operator==(const NodeKey& a, const NodeKey& b) {
        return a.tag_ == b.tag_ && (a.tag_ != 0 || a.score_ == b.score_);
    }
    friend bool operator!=(const NodeKey& a, const NodeKey& b) { return !(a == b); }
    friend bool operator<=(const NodeKey& a, const NodeKey& b) { return !(b < a); }

private:
    NodeKey(int tag, double score) : tag_(tag), score_(score) {}
    int tag_;
    double score_;
};

// One distinct score in the window, with per-node label counters and
// subtree aggregates (self included). Carries link slots for the two
// weighted lists it may belong to.
struct StatsNode {
    explicit StatsNode(NodeKey k) : key(k) {}

    NodeKey key;
    std::int64_t pos_label = 0;
    std::int64_t neg_label = 0;
    std::int64_t acc_pos = 0;
    std::int64_t acc_neg = 0;

    StatsNode* left = nullptr;
    StatsNode* right = nullptr;
    StatsNode* parent = nullptr;
    int height = 1;

    ListLink links[2];

    bool is_positive() const { return pos_label > 0; }
};

struct HeadStats {
    std::int64_t head_pos = 0;  // positives at keys strictly below the query
    std::int64_t head_neg = 0;
};

// Counter-augmented AVL tree over the window's distinct scores, together
// with an ordered index of the positive nodes and the all-positives weighted
// list. All label updates are O(log k); rotations refresh the aggregates of
// just the two rotated nodes.
class StatsTree {
public:
    StatsTree();
    ~StatsTree();
    StatsTree(const StatsTree&) = delete;
    StatsTree& operator=(const StatsTree&) = delete;

    // --- queries -----------------------------------------------------------

    const StatsNode* find(NodeKey key) const;

    // Cumulative label counts strictly below `key`. Precondition: a node
    // with this key exists (asserted, not checked in release builds).
    HeadStats head_stats(NodeKey key) const;

    // The positive node with the largest key <= score; falls back to the
    // min sentinel, which always qualifies.
    StatsNode* max_pos(double score) const;

    std::int64_t total_pos() const { return total_pos_; }
    std::int64_t total_neg() const { return total_neg_; }
    std::size_t node_count() const { return node_count_; }

    StatsNode* min_sentinel() const { return min_sentinel_; }
    StatsNode* max_sentinel() const { return max_sentinel_; }
    const WeightedList& pos_list() const { return pos_list_; }
    WeightedList& pos_list() { return pos_list_; }

    // In-order visit of every node (sentinels included).
    template <typename Visitor>
    void visit_in_order(Visitor&& visit) const {
        visit_in_order_impl(root_, visit);
    }

    // --- updates -----------------------------------------------------------

    // Adds one positively labeled entry at `score`, creating the node if
    // needed and splicing it into the positive index and list on first use.
    // Returns the node. Throws std::invalid_argument on non-finite scores.
    StatsNode* add_pos_label(double score);

    // Removes one positively labeled entry at `score`. The node leaves the
    // positive index/list when its last positive goes, and leaves the tree
    // when both counters hit zero. Throws std::invalid_argument if the
    // window holds no such entry.
    void remove_pos_label(double score);

    StatsNode* add_neg_label(double score);
    void remove_neg_label(double score);

    // --- diagnostics (test support, O(k)) ------------------------------------

    // Recomputes everything from first principles; returns the first
    // violation found, or an empty string when sound.
    std::string check_integrity() const;

private:
    StatsNode* find_mutable(NodeKey key) const;
    StatsNode* find_or_insert(NodeKey key);
    void erase_node(StatsNode* v);
    void replace_child(StatsNode* parent, StatsNode* old_child, StatsNode* new_child);
    void rebalance_upward(StatsNode* v);
    StatsNode* rotate_left(StatsNode* v);
    StatsNode* rotate_right(StatsNode* v);
    static void refresh(StatsNode* v);
    static int height_of(const StatsNode* v) { return v ? v->height : 0; }
    static std::int64_t acc_pos_of(const StatsNode* v) { return v ? v->acc_pos : 0; }
    static std::int64_t acc_neg_of(const StatsNode* v) { return v ? v->acc_neg : 0; }
    void destroy(StatsNode* v);

    template <typename Visitor>
    static void visit_in_order_impl(const StatsNode* v, Visitor& visit) {
        if (!v) return;
        visit_in_order_impl(v->left, visit);
        visit(*v);
        visit_in_order_impl(v->right, visit);
    }

    StatsNode* root_ = nullptr;
    StatsNode* min_sentinel_ = nullptr;
    StatsNode* max_sentinel_ = nullptr;
    std::map<NodeKey, StatsNode*> tp_index_;  // positive nodes plus sentinels
    WeightedList pos_list_;
    std::int64_t total_pos_ = 0;
    std::int64_t total_neg_ = 0;
    std::size_t node_count_ = 0;
};

}  // namespace aucstream
