#include "aucstream/synthetic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace aucstream {

SyntheticStream::SyntheticStream(const SyntheticConfig& config) : config_(config) {
    if (!(config.pos_rate >= 0.0 && config.pos_rate <= 1.0)) {
        throw std::invalid_argument("pos_rate must be in [0,1]");
    }
    if (!std::isfinite(config.separation) || config.separation < 0.0) {
        throw std::invalid_argument("separation must be finite and non-negative");
    }
    // splitmix64 seeding keeps distinct seeds far apart in state space
    state_ = config.seed + 0x9e3779b97f4a7c15ULL;
}

double SyntheticStream::next_unit() {
    // splitmix64 step
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return (static_cast<double>(z >> 11) + 0.5) * 0x1.0p-53;
}

double SyntheticStream::next_normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = next_unit();
    const double u2 = next_unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

LabeledScore SyntheticStream::next() {
    const bool positive = next_unit() < config_.pos_rate;
    const double mean = positive ? 0.0 : config_.separation;
    return LabeledScore{mean + next_normal(),
                        positive ? Label::positive : Label::negative};
}

std::vector<LabeledScore> generate_stream(const SyntheticConfig& config) {
    SyntheticStream stream(config);
    std::vector<LabeledScore> events;
    events.reserve(config.count);
    for (std::uint64_t i = 0; i < config.count; ++i) {
        events.push_back(stream.next());
    }
    return events;
}

}  // namespace aucstream
