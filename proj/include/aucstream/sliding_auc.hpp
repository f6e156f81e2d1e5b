#pragma once

#include <cstddef>
#include <deque>
#include <optional>

#include "aucstream/compressed_auc.hpp"
#include "aucstream/core.hpp"

namespace aucstream {

// Couples a FIFO of the most recent `capacity` events to the estimator:
// each push at capacity first evicts the oldest event. During warm-up the
// estimate covers whatever is in the buffer; callers can gate on size().
// Single-writer; queries must not interleave with pushes.
class SlidingAucEstimator {
public:
    SlidingAucEstimator(std::size_t capacity, EstimatorConfig config);

    SlidingAucEstimator(const SlidingAucEstimator&) = delete;
    SlidingAucEstimator& operator=(const SlidingAucEstimator&) = delete;

    // Appends e, returning the evicted event when the window was full.
    // Throws std::invalid_argument on non-finite scores, leaving the
    // window untouched.
    std::optional<LabeledScore> push(LabeledScore e);

    AucValue estimate() const { return estimator_.estimate(); }
    AucValue exact() const { return estimator_.exact(); }

    std::size_t capacity() const { return capacity_; }
    std::size_t size() const { return buffer_.size(); }
    const std::deque<LabeledScore>& contents() const { return buffer_; }
    const CompressedAuc& estimator() const { return estimator_; }

private:
    std::size_t capacity_;
    std::deque<LabeledScore> buffer_;
    CompressedAuc estimator_;
};

}  // namespace aucstream
