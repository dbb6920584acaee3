#pragma once

#include <vector>

#include "ihbag/dataset.hpp"
#include "oracles.hpp"

namespace testing {

inline ihbag::Dataset make_dataset(const std::vector<std::vector<double>>& rows, std::vector<int> labels,
                                   int class_count = 2) {
    ihbag::Matrix x(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c) x(r, c) = rows[r][c];
    return ihbag::Dataset("test", std::move(x), std::move(labels), class_count);
}

inline oracle::Points to_points(const ihbag::Dataset& d) {
    oracle::Points p;
    for (std::size_t i = 0; i < d.size(); ++i) p.emplace_back(d.row(i).begin(), d.row(i).end());
    return p;
}

/// Random dataset with uniform features, labels uniform over class_count.
inline ihbag::Dataset random_dataset(std::size_t n, std::size_t dims, int class_count, ihbag::Seed seed) {
    ihbag::Engine eng(seed);
    ihbag::Matrix x(n, dims);
    std::vector<int> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < dims; ++j) x(i, j) = ihbag::uniform01(eng);
        y[i] = static_cast<int>(ihbag::uniform_below(eng, static_cast<std::uint64_t>(class_count)));
    }
    y[0] = 0;
    y[1] = 1;
    return ihbag::Dataset("random", std::move(x), std::move(y), class_count);
}

} // namespace testing
