#include "aucstream/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace aucstream {

AucValue::AucValue(std::int64_t twice_numerator, std::int64_t pair_count)
    : twice_numerator_(twice_numerator), pair_count_(pair_count) {
    if (pair_count_ < 0 || twice_numerator_ < 0 || twice_numerator_ > 2 * pair_count_) {
        throw std::logic_error("AucValue outside [0,1]");
    }
}

double AucValue::value() const {
    if (!is_defined()) {
        throw std::logic_error("AucValue::value() on undefined AUC");
    }
    return static_cast<double>(twice_numerator_) / static_cast<double>(2 * pair_count_);
}

bool operator==(const AucValue& a, const AucValue& b) {
    if (a.is_defined() != b.is_defined()) return false;
    if (!a.is_defined()) return true;
    const std::int64_t ga = std::gcd(a.twice_numerator_, 2 * a.pair_count_);
    const std::int64_t gb = std::gcd(b.twice_numerator_, 2 * b.pair_count_);
    return a.twice_numerator_ / ga == b.twice_numerator_ / gb &&
           2 * a.pair_count_ / ga == 2 * b.pair_count_ / gb;
}

namespace {

void require_finite(std::span<const LabeledScore> events) {
    for (const auto& e : events) {
        if (!std::isfinite(e.score)) {
            throw std::invalid_argument("non-finite score in input");
        }
    }
}

}  // namespace

AucValue exact_auc(std::span<const LabeledScore> events) {
    require_finite(events);

    std::vector<LabeledScore> sorted(events.begin(), events.end());
    std::sort(sorted.begin(), sorted.end(),
              [](const LabeledScore& a, const LabeledScore& b) { return a.score < b.score; });

    std::int64_t total_pos = 0;
    std::int64_t total_neg = 0;
    for (const auto& e : sorted) {
        (e.label == Label::positive ? total_pos : total_neg) += 1;
    }
    if (total_pos == 0 || total_neg == 0) return AucValue::undefined();

    // One group per distinct score: accumulate (2*head_pos + pos) * neg.
    std::int64_t twice_sum = 0;
    std::int64_t head_pos = 0;
    std::size_t i = 0;
    while (i < sorted.size()) {
        std::size_t j = i;
        std::int64_t pos = 0;
        std::int64_t neg = 0;
        while (j < sorted.size() && sorted[j].score == sorted[i].score) {
            (sorted[j].label == Label::positive ? pos : neg) += 1;
            ++j;
        }
        twice_sum += (2 * head_pos + pos) * neg;
        head_pos += pos;
        i = j;
    }
    return AucValue(twice_sum, total_pos * total_neg);
}

AucValue pairwise_auc_oracle(std::span<const LabeledScore> events) {
    require_finite(events);

    std::int64_t total_pos = 0;
    std::int64_t total_neg = 0;
    std::int64_t twice_sum = 0;
    for (const auto& p : events) {
        if (p.label != Label::positive) continue;
        ++total_pos;
        for (const auto& n : events) {
            if (n.label != Label::negative) continue;
            if (n.score > p.score) {
                twice_sum += 2;
            } else if (n.score == p.score) {
                twice_sum += 1;
            }
        }
    }
    for (const auto& n : events) {
        if (n.label == Label::negative) ++total_neg;
    }
    if (total_pos == 0 || total_neg == 0) return AucValue::undefined();
    return AucValue(twice_sum, total_pos * total_neg);
}

}  // namespace aucstream
