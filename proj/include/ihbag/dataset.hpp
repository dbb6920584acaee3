#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ihbag/matrix.hpp"
#include "ihbag/random.hpp"

namespace ihbag {

using IndexList = std::vector<std::size_t>;

/// Immutable labeled feature matrix. Labels are dense class indices in
/// [0, class_count). The constructor enforces the invariants: at least one
/// instance and one feature, at least two classes, finite features and
/// in-range labels.
class Dataset {
public:
    Dataset(std::string name, Matrix features, std::vector<int> labels, int class_count,
            std::vector<std::string> class_names = {});

    const std::string& name() const noexcept { return name_; }
    std::size_t size() const noexcept { return features_.rows(); }
    std::size_t feature_count() const noexcept { return features_.cols(); }
    int class_count() const noexcept { return class_count_; }

    const Matrix& features() const noexcept { return features_; }
    std::span<const double> row(std::size_t i) const { return features_.row(i); }
    std::span<const int> labels() const noexcept { return labels_; }
    int label(std::size_t i) const { return labels_[i]; }

    /// Raw label text per class index, when the data came from a file.
    const std::vector<std::string>& class_names() const noexcept { return class_names_; }

    /// Rows at `indices`, in that order. Keeps class_count and class names.
    Dataset subset(std::span<const std::size_t> indices) const;

    /// Same features, replaced labels (e.g. after noise injection).
    Dataset with_labels(std::vector<int> labels) const;

    Dataset with_name(std::string name) const;

private:
    std::string name_;
    Matrix features_;
    std::vector<int> labels_;
    int class_count_;
    std::vector<std::string> class_names_;
};

/// Reads a comma-separated file whose last column is the class label.
/// An optional header line is detected by its non-numeric feature cells.
/// Labels are encoded densely in first-appearance order.
Dataset load_csv(const std::filesystem::path& path);
Dataset parse_csv(std::istream& in, std::string name);

/// Writes the dataset in the format load_csv accepts, with a header line.
void write_csv(const Dataset& d, std::ostream& out);
void write_csv(const Dataset& d, const std::filesystem::path& path);

struct Scaler {
    std::vector<double> min;
    std::vector<double> max;

    /// Min-max transform of one feature vector. Constant features map to 0;
    /// values outside the fitted range are not clamped.
    std::vector<double> transform(std::span<const double> x) const;
};

Scaler fit_scaler(const Dataset& d, std::span<const std::size_t> indices);
Scaler fit_scaler(const Dataset& d);
Dataset apply_scaler(const Scaler& s, const Dataset& d);

struct FoldSplit {
    IndexList train_indices;
    IndexList test_indices;
    int fold_id = 0;
};

/// Stratified k-fold partition. Each class is shuffled and dealt round-robin
/// across folds, continuing where the previous class stopped, so per-class
/// test counts differ from the proportional share by at most one and fold
/// sizes differ by at most one.
std::vector<FoldSplit> stratified_kfold(const Dataset& d, int k, Seed seed);

/// Gaussian clusters, class c centered on the unit vector of axis c (axes are
/// reused with growing magnitude when class_count > n_features). Rows are
/// ordered class by class.
Dataset synth_blobs(int class_count, std::size_t per_class, std::size_t n_features, double spread,
                    Seed seed);

} // namespace ihbag
