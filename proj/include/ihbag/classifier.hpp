#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ihbag/dataset.hpp"
#include "ihbag/matrix.hpp"
#include "ihbag/random.hpp"

namespace ihbag {

struct ClassifierSpec {
    int epochs = 100;
    double learning_rate = 1.0;
    Seed seed = 0;

    void validate() const;
};

/// One-vs-all linear model: one weight row per class, last column is the bias.
/// When `feature_subset` is non-empty the model reads only those columns of
/// its input (Random Subspace members).
class TrainedClassifier {
public:
    /// `input_dim` is the dimension predict() expects; equals weights.cols() - 1
    /// unless a feature subset is given.
    TrainedClassifier(Matrix weights, std::size_t input_dim, IndexList feature_subset = {});

    int class_count() const noexcept { return static_cast<int>(weights_.rows()); }
    std::size_t input_dim() const noexcept { return input_dim_; }
    const Matrix& weights() const noexcept { return weights_; }
    const IndexList& feature_subset() const noexcept { return feature_subset_; }

    /// Raw activations w_c . [x; 1] for every class.
    std::vector<double> activations(std::span<const double> x) const;

    /// Class with the highest activation; ties go to the lowest class index.
    int predict(std::span<const double> x) const;

    bool operator==(const TrainedClassifier&) const = default;

private:
    Matrix weights_;
    std::size_t input_dim_;
    IndexList feature_subset_;
};

/// Trains one binary perceptron per class (targets +1 for the class, -1
/// otherwise) from zero weights. Each class learner shuffles the instance
/// order every epoch from its own stream derived from spec.seed, updates on
/// any non-positive margin, and stops after an epoch without updates.
/// `class_count` comes from the parent dataset; absent classes are allowed.
TrainedClassifier train_perceptron_ova(const Matrix& features, std::span<const int> labels,
                                       int class_count, const ClassifierSpec& spec);

/// Trains on the given rows (repeats allowed) of `d`, optionally restricted
/// to `feature_subset`. An empty `rows` span means every row.
TrainedClassifier train_perceptron_ova(const Dataset& d, std::span<const std::size_t> rows,
                                       std::span<const std::size_t> feature_subset,
                                       const ClassifierSpec& spec);

/// Fraction of rows of `d` predicted correctly.
double accuracy(const TrainedClassifier& c, const Dataset& d);

} // namespace ihbag
