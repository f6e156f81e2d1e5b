#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include "aucstream/core.hpp"
#include "aucstream/stats_tree.hpp"
#include "aucstream/weighted_list.hpp"

namespace aucstream {

// Estimator configuration. alpha = 1 + epsilon is kept as an exact rational
// so the compression predicates compare integers — no float tie-breaking.
// epsilon = 0 is the exact mode: the compressed list then keeps every
// positive node and the estimate matches the exact AUC bit for bit.
struct EstimatorConfig {
    std::int64_t alpha_num = 1;
    std::int64_t alpha_den = 1;
    bool flipped = false;

    // Parses epsilon from a decimal literal with at most 6 fractional
    // digits, e.g. "0.25". Throws std::invalid_argument on anything else.
    static EstimatorConfig from_epsilon(std::string_view decimal, bool flipped = false);

    double epsilon() const {
        return static_cast<double>(alpha_num - alpha_den) / static_cast<double>(alpha_den);
    }
    bool exact_mode() const { return alpha_num == alpha_den; }
};

// Result of the full structural audit; never throws, reports the first
// violated predicate instead.
struct InvariantReport {
    bool ok = true;
    std::string violation;
};

// Approximate-AUC estimator over a multiset of scored, labeled events.
//
// Keeps the augmented score tree plus a compressed weighted list C over a
// subset of the positive nodes. Between two consecutive C members the head
// count of positives may grow by at most the factor alpha (that caps the
// estimation error at epsilon/2 relative), and across any two consecutive
// gaps it must grow by more than alpha (that caps |C| at O(log k / epsilon)).
// Updates cost O(log k + |C|); estimates cost O(|C|).
//
// In flipped mode a second, label-inverted instance is fed the same events
// and the estimate is its complement, turning the guarantee into
// (1 - auc) * epsilon / 2 — tighter when the AUC is close to 1.
class CompressedAuc {
public:
    explicit CompressedAuc(EstimatorConfig config);

    CompressedAuc(const CompressedAuc&) = delete;
    CompressedAuc& operator=(const CompressedAuc&) = delete;

    void add(LabeledScore e);
    void remove(LabeledScore e);

    void add_pos(double score);
    void remove_pos(double score);
    void add_neg(double score);
    void remove_neg(double score);

    // Approximate AUC from the compressed list; undefined while one of the
    // classes is absent.
    AucValue estimate() const;

    // Exact AUC by an in-order walk of the tree, O(k). The validation and
    // benchmarking baseline.
    AucValue exact() const;

    const EstimatorConfig& config() const { return config_; }
    const StatsTree& tree() const { return tree_; }
    const WeightedList& compressed_list() const { return clist_; }
    std::size_t compressed_size() const { return clist_.size(); }

    // Recomputes every structural invariant from first principles (tree
    // aggregates, both lists' gaps, the compression inequalities, the size
    // bound, and the error guarantee itself). O(k); meant for tests.
    InvariantReport verify_invariants() const;

private:
    friend struct TestAccess;

    struct Cursor {
        StatsNode* member;       // compressed-list member with largest key <= score
        std::int64_t head_pos;   // cumulative gap_pos before it
    };
    Cursor locate(double score) const;

    bool growth_cap_violated(std::int64_t head_pos, std::int64_t gap, std::int64_t own_pos) const;
    void add_next(StatsNode* v);
    void repair_growth_cap();
    void compress();
    AucValue approximate_over(const WeightedList& list) const;

    EstimatorConfig config_;
    StatsTree tree_;
    WeightedList clist_;
    std::unique_ptr<CompressedAuc> flip_twin_;
};

}  // namespace aucstream
