#include "aucstream/sliding_auc.hpp"

#include <cmath>
#include <stdexcept>

namespace aucstream {

SlidingAucEstimator::SlidingAucEstimator(std::size_t capacity, EstimatorConfig config)
    : capacity_(capacity), estimator_(config) {
    if (capacity_ == 0) throw std::invalid_argument("window capacity must be positive");
}

std::optional<LabeledScore> SlidingAucEstimator::push(LabeledScore e) {
    if (!std::isfinite(e.score)) {
        throw std::invalid_argument("non-finite score");
    }
    std::optional<LabeledScore> evicted;
    if (buffer_.size() == capacity_) {
        evicted = buffer_.front();
        buffer_.pop_front();
        estimator_.remove(*evicted);
    }
    buffer_.push_back(e);
    estimator_.add(e);
    return evicted;
}

}  // namespace aucstream
