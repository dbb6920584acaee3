#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ihbag/dataset.hpp"

namespace ihbag {

/// Per-instance k-Disagreeing-Neighbors values. Stored as integer counts of
/// disagreeing neighbors so values are exact multiples of 1/k.
class HardnessProfile {
public:
    HardnessProfile(std::vector<int> disagreeing, int k);

    int k() const noexcept { return k_; }
    std::size_t size() const noexcept { return disagreeing_.size(); }

    /// Number of the k nearest neighbors of instance i with a different label.
    int disagreeing(std::size_t i) const { return disagreeing_[i]; }
    std::span<const int> disagreeing() const noexcept { return disagreeing_; }

    double value(std::size_t i) const { return static_cast<double>(disagreeing_[i]) / k_; }
    std::vector<double> values() const;

private:
    std::vector<int> disagreeing_;
    int k_;
};

/// The k instances closest to `query` in Euclidean distance, nearest first,
/// never including `query` itself. Equal distances resolve to the lower
/// instance index.
IndexList knn_indices(const Dataset& d, std::size_t query, int k);

HardnessProfile kdn(const Dataset& d, int k);

} // namespace ihbag
