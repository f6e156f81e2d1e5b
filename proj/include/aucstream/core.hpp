#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace aucstream {

// Binary ground-truth label of a scored event. The wire encoding is 0/1
// with 1 = positive. Score direction convention: the larger the score,
// the stronger the belief that the label is negative.
enum class Label : std::uint8_t { negative = 0, positive = 1 };

inline Label flipped(Label l) {
    return l == Label::positive ? Label::negative : Label::positive;
}

// One stream event: a classifier score plus its true label.
// Scores must be finite; infinities are reserved for internal sentinels.
struct LabeledScore {
    double score = 0.0;
    Label label = Label::negative;
};

// AUC as an exact rational. The numerator is kept scaled by 2 so tie
// half-terms stay integral; value() divides only at the end. Undefined
// exactly when the window lacks one of the two classes (pair_count = 0).
class AucValue {
public:
    AucValue() = default;
    AucValue(std::int64_t twice_numerator, std::int64_t pair_count);

    static AucValue undefined() { return AucValue(); }

    bool is_defined() const { return pair_count_ > 0; }
    double value() const;  // in [0,1]; requires is_defined()

    std::int64_t twice_numerator() const { return twice_numerator_; }
    std::int64_t pair_count() const { return pair_count_; }

    // Exact comparison of the reduced rationals (undefined == undefined).
    friend bool operator==(const AucValue& a, const AucValue& b);
    friend bool operator!=(const AucValue& a, const AucValue& b) { return !(a == b); }

private:
    std::int64_t twice_numerator_ = 0;
    std::int64_t pair_count_ = 0;
};

// Exact AUC by sorting and a single pass over distinct scores:
// sum of (head_pos(s) + pos(s)/2) * neg(s), normalized by pos_total * neg_total.
// Ties contribute half. Throws std::invalid_argument on non-finite scores.
AucValue exact_auc(std::span<const LabeledScore> events);

// Independent brute-force route: mean over all (positive, negative) pairs of
// 1 if the negative outscores the positive, 1/2 on a tie, 0 otherwise.
// Agrees with exact_auc on every input; kept quadratic on purpose.
AucValue pairwise_auc_oracle(std::span<const LabeledScore> events);

inline AucValue exact_auc(const std::vector<LabeledScore>& events) {
    return exact_auc(std::span<const LabeledScore>(events));
}
inline AucValue pairwise_auc_oracle(const std::vector<LabeledScore>& events) {
    return pairwise_auc_oracle(std::span<const LabeledScore>(events));
}

}  // namespace aucstream
