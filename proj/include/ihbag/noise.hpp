#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ihbag/ensemble.hpp"
#include "ihbag/random.hpp"

namespace ihbag {

/// Which training instances had their label changed. noisy_mask[i] holds
/// exactly when the current label differs from original_labels[i].
struct NoiseRecord {
    double rate = 0.0;
    std::vector<bool> noisy_mask;
    std::vector<int> original_labels;

    std::size_t noisy_count() const;
};

struct NoisyLabels {
    std::vector<int> labels;
    NoiseRecord record;
};

/// Each label flips independently with probability `rate` to a class drawn
/// uniformly from the other class_count - 1 classes. Every instance consumes
/// a flip draw, so the mask for a given seed does not depend on the labels.
NoisyLabels inject_label_noise(std::span<const int> labels, int class_count, double rate, Seed seed);

/// Mean over the pool's bootstrap sets of the fraction of drawn indices
/// (with multiplicity) that are noisy. Empty for pools without bootstrap
/// sets (random subspace).
std::optional<double> freq_noisy(const TrainedPool& pool, const NoiseRecord& record);

} // namespace ihbag
