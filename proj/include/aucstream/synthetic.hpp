#pragma once

#include <cstdint>
#include <vector>

#include "aucstream/core.hpp"

namespace aucstream {

// Synthetic labeled-score stream: labels are Bernoulli(pos_rate), scores are
// unit-variance Gaussians with positives centered `separation` below the
// negatives. The long-run AUC is Phi(separation / sqrt(2)): 0.5 at zero
// separation, approaching 1 as the classes pull apart.
struct SyntheticConfig {
    std::uint64_t count = 0;
    double pos_rate = 0.3;
    double separation = 1.0;
    std::uint64_t seed = 1;
};

// Deterministic for a fixed seed, independent of the platform's
// distribution implementations.
std::vector<LabeledScore> generate_stream(const SyntheticConfig& config);

// Writes one event per call; usable for streaming generation in the CLI.
class SyntheticStream {
public:
    explicit SyntheticStream(const SyntheticConfig& config);
    LabeledScore next();

private:
    double next_unit();    // uniform in (0,1)
    double next_normal();  // standard normal via Box-Muller

    SyntheticConfig config_;
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace aucstream
