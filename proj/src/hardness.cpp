#include "ihbag/hardness.hpp"

#include <algorithm>
#include <utility>

#include <fmt/format.h>

#include "ihbag/error.hpp"

namespace ihbag {

HardnessProfile::HardnessProfile(std::vector<int> disagreeing, int k)
    : disagreeing_(std::move(disagreeing)), k_(k) {
    if (k_ < 1) throw ValidationError("hardness: k must be positive");
    for (int c : disagreeing_) {
        if (c < 0 || c > k_) throw ValidationError("hardness: disagreeing count outside [0, k]");
    }
}

std::vector<double> HardnessProfile::values() const {
    std::vector<double> out(size());
    for (std::size_t i = 0; i < size(); ++i) out[i] = value(i);
    return out;
}

namespace {

using Candidate = std::pair<double, std::size_t>; // squared distance, index

void check_k(const Dataset& d, int k) {
    if (k < 1) throw ValidationError("knn: k must be positive");
    if (static_cast<std::size_t>(k) >= d.size())
        throw ValidationError(
            fmt::format("knn: k = {} needs more than {} instances", k, d.size()));
}

// Fills `best` with the k nearest candidates of `query`, sorted.
void nearest(const Dataset& d, std::size_t query, std::size_t k, std::vector<Candidate>& scratch,
             std::vector<Candidate>& best) {
    const auto q = d.row(query);
    scratch.clear();
    for (std::size_t j = 0; j < d.size(); ++j) {
        if (j == query) continue;
        const auto x = d.row(j);
        double dist = 0.0;
        for (std::size_t f = 0; f < q.size(); ++f) {
            const double diff = x[f] - q[f];
            dist += diff * diff;
        }
        scratch.emplace_back(dist, j);
    }
    std::partial_sort(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(k),
                      scratch.end());
    best.assign(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(k));
}

} // namespace

IndexList knn_indices(const Dataset& d, std::size_t query, int k) {
    check_k(d, k);
    if (query >= d.size()) throw ValidationError("knn: query index out of range");
    std::vector<Candidate> scratch, best;
    nearest(d, query, static_cast<std::size_t>(k), scratch, best);
    IndexList out;
    out.reserve(best.size());
    for (const auto& [dist, j] : best) out.push_back(j);
    return out;
}

HardnessProfile kdn(const Dataset& d, int k) {
    check_k(d, k);
    std::vector<int> counts(d.size());
    std::vector<Candidate> scratch, best;
    scratch.reserve(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        nearest(d, i, static_cast<std::size_t>(k), scratch, best);
        counts[i] = static_cast<int>(std::count_if(best.begin(), best.end(), [&](const auto& c) {
            return d.label(c.second) != d.label(i);
        }));
    }
    return HardnessProfile(std::move(counts), k);
}

} // namespace ihbag
