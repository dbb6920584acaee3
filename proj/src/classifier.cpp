#include "ihbag/classifier.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

#include "ihbag/error.hpp"

namespace ihbag {

void ClassifierSpec::validate() const {
    if (epochs < 1) throw ValidationError("classifier: epochs must be >= 1");
    if (!(learning_rate > 0.0)) throw ValidationError("classifier: learning_rate must be > 0");
}

TrainedClassifier::TrainedClassifier(Matrix weights, std::size_t input_dim, IndexList feature_subset)
    : weights_(std::move(weights)), input_dim_(input_dim), feature_subset_(std::move(feature_subset)) {
    if (weights_.rows() < 1 || weights_.cols() < 2)
        throw DimensionError("classifier: weight matrix needs >= 1 class and >= 1 feature");
    const std::size_t used = feature_subset_.empty() ? input_dim_ : feature_subset_.size();
    if (weights_.cols() != used + 1)
        throw DimensionError(fmt::format("classifier: {} weight columns for {} inputs",
                                         weights_.cols(), used));
    for (std::size_t j : feature_subset_) {
        if (j >= input_dim_) throw DimensionError("classifier: feature subset index out of range");
    }
}

std::vector<double> TrainedClassifier::activations(std::span<const double> x) const {
    if (x.size() != input_dim_)
        throw DimensionError(
            fmt::format("classifier expects {} features, got {}", input_dim_, x.size()));
    const std::size_t used = weights_.cols() - 1;
    std::vector<double> out(weights_.rows());
    for (std::size_t c = 0; c < weights_.rows(); ++c) {
        const auto w = weights_.row(c);
        double a = w[used];
        if (feature_subset_.empty()) {
            for (std::size_t j = 0; j < used; ++j) a += w[j] * x[j];
        } else {
            for (std::size_t j = 0; j < used; ++j) a += w[j] * x[feature_subset_[j]];
        }
        out[c] = a;
    }
    return out;
}

int TrainedClassifier::predict(std::span<const double> x) const {
    const auto a = activations(x);
    // max_element returns the first maximum, i.e. the lowest class index on ties.
    return static_cast<int>(std::max_element(a.begin(), a.end()) - a.begin());
}

namespace {

// Rows of `inputs` are already augmented with a trailing 1.
void train_binary(const Matrix& inputs, std::span<const int> labels, int positive,
                  const ClassifierSpec& spec, std::span<double> w) {
    const std::size_t n = inputs.rows();
    const std::size_t dim = inputs.cols();
    Engine eng(mix_seed(spec.seed, "ova-class", positive));
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});

    for (int epoch = 0; epoch < spec.epochs; ++epoch) {
        shuffle(std::span(order), eng);
        std::size_t updates = 0;
        for (std::size_t i : order) {
            const auto z = inputs.row(i);
            const double target = labels[i] == positive ? 1.0 : -1.0;
            double a = 0.0;
            for (std::size_t j = 0; j < dim; ++j) a += w[j] * z[j];
            if (target * a <= 0.0) {
                const double step = spec.learning_rate * target;
                for (std::size_t j = 0; j < dim; ++j) w[j] += step * z[j];
                ++updates;
            }
        }
        if (updates == 0) break;
    }
}

TrainedClassifier train_augmented(const Matrix& inputs, std::span<const int> labels, int class_count,
                                  const ClassifierSpec& spec, std::size_t input_dim,
                                  IndexList subset) {
    spec.validate();
    if (inputs.rows() == 0) throw ValidationError("classifier: empty training set");
    if (class_count < 2) throw ValidationError("classifier: class_count must be >= 2");
    Matrix weights(static_cast<std::size_t>(class_count), inputs.cols());
    for (int c = 0; c < class_count; ++c)
        train_binary(inputs, labels, c, spec, weights.row(static_cast<std::size_t>(c)));
    return TrainedClassifier(std::move(weights), input_dim, std::move(subset));
}

} // namespace

TrainedClassifier train_perceptron_ova(const Matrix& features, std::span<const int> labels,
                                       int class_count, const ClassifierSpec& spec) {
    if (labels.size() != features.rows())
        throw DimensionError("classifier: label count does not match feature rows");
    Matrix inputs(features.rows(), features.cols() + 1);
    for (std::size_t r = 0; r < features.rows(); ++r) {
        const auto src = features.row(r);
        auto dst = inputs.row(r);
        std::copy(src.begin(), src.end(), dst.begin());
        dst[features.cols()] = 1.0;
    }
    return train_augmented(inputs, labels, class_count, spec, features.cols(), {});
}

TrainedClassifier train_perceptron_ova(const Dataset& d, std::span<const std::size_t> rows,
                                       std::span<const std::size_t> feature_subset,
                                       const ClassifierSpec& spec) {
    IndexList all_rows;
    if (rows.empty()) {
        all_rows.resize(d.size());
        std::iota(all_rows.begin(), all_rows.end(), std::size_t{0});
        rows = all_rows;
    }
    const std::size_t used = feature_subset.empty() ? d.feature_count() : feature_subset.size();
    Matrix inputs(rows.size(), used + 1);
    std::vector<int> labels(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r] >= d.size()) throw ValidationError("classifier: row index out of range");
        const auto src = d.row(rows[r]);
        auto dst = inputs.row(r);
        if (feature_subset.empty()) {
            std::copy(src.begin(), src.end(), dst.begin());
        } else {
            for (std::size_t j = 0; j < used; ++j) {
                if (feature_subset[j] >= src.size())
                    throw DimensionError("classifier: feature subset index out of range");
                dst[j] = src[feature_subset[j]];
            }
        }
        dst[used] = 1.0;
        labels[r] = d.label(rows[r]);
    }
    return train_augmented(inputs, labels, d.class_count(), spec, d.feature_count(),
                           IndexList(feature_subset.begin(), feature_subset.end()));
}

double accuracy(const TrainedClassifier& c, const Dataset& d) {
    std::size_t hits = 0;
    for (std::size_t i = 0; i < d.size(); ++i) hits += c.predict(d.row(i)) == d.label(i);
    return static_cast<double>(hits) / static_cast<double>(d.size());
}

} // namespace ihbag
