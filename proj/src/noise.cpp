#include "ihbag/noise.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "ihbag/error.hpp"

namespace ihbag {

std::size_t NoiseRecord::noisy_count() const {
    return static_cast<std::size_t>(std::count(noisy_mask.begin(), noisy_mask.end(), true));
}

NoisyLabels inject_label_noise(std::span<const int> labels, int class_count, double rate,
                               Seed seed) {
    if (!(rate >= 0.0 && rate <= 1.0))
        throw ValidationError(fmt::format("label noise: rate {} outside [0, 1]", rate));
    if (class_count < 2 && rate > 0.0)
        throw ValidationError("label noise: need at least 2 classes to change a label");

    NoisyLabels out;
    out.labels.assign(labels.begin(), labels.end());
    out.record.rate = rate;
    out.record.original_labels = out.labels;
    out.record.noisy_mask.assign(labels.size(), false);

    Engine eng(seed);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] < 0 || labels[i] >= std::max(class_count, 1))
            throw ValidationError(fmt::format("label noise: label {} out of range", labels[i]));
        if (uniform01(eng) < rate) {
            const auto pick = static_cast<int>(
                uniform_below(eng, static_cast<std::uint64_t>(class_count - 1)));
            out.labels[i] = pick >= labels[i] ? pick + 1 : pick;
            out.record.noisy_mask[i] = true;
        }
    }
    return out;
}

std::optional<double> freq_noisy(const TrainedPool& pool, const NoiseRecord& record) {
    if (pool.bootstraps().empty()) return std::nullopt;
    double total = 0.0;
    for (const auto& sample : pool.bootstraps()) {
        std::size_t noisy = 0;
        for (std::size_t idx : sample) {
            if (idx >= record.noisy_mask.size())
                throw DimensionError("freq_noisy: bootstrap index outside the noise record");
            noisy += record.noisy_mask[idx];
        }
        total += static_cast<double>(noisy) / static_cast<double>(sample.size());
    }
    return total / static_cast<double>(pool.bootstraps().size());
}

} // namespace ihbag
