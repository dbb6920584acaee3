#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ihbag/classifier.hpp"
#include "ihbag/dataset.hpp"
#include "ihbag/ensemble.hpp"
#include "ihbag/noise.hpp"
#include "ihbag/random.hpp"

namespace ihbag {

enum class Method { bagging_ih, bagging, random_subspace, perceptron_ova };

inline constexpr Method all_methods[] = {Method::bagging_ih, Method::bagging,
                                         Method::random_subspace, Method::perceptron_ova};

std::string_view method_name(Method m);
/// Column heading used in report tables.
std::string_view method_label(Method m);
Method parse_method(std::string_view name);

struct ExperimentConfig {
    /// CSV paths or synthetic specs, see load_dataset_source().
    std::vector<std::string> datasets;
    std::vector<Method> methods{std::begin(all_methods), std::end(all_methods)};
    std::vector<double> noise_levels{0.0, 0.1, 0.2, 0.3, 0.4};
    int repetitions = 20;
    int folds = 5;
    std::size_t pool_size = 50;
    /// Bootstrap set size; 0 means |T| (the training fold size).
    std::size_t bootstrap_size = 0;
    int k = 5;
    double feature_fraction = 0.5;
    ClassifierSpec classifier;
    Seed master_seed = 20180101;
    /// Worker threads; 0 picks the hardware concurrency.
    unsigned threads = 0;

    void validate() const;
};

/// Flat `key = value` text; `#` starts a comment. Keys: dataset (repeatable),
/// datasets (`;`-separated), methods, noise_levels, repetitions, folds,
/// pool_size, bootstrap_size (`full` or a count), k, feature_fraction,
/// epochs, learning_rate, master_seed, threads. Missing keys keep defaults.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::filesystem::path& path);
void write_config(const ExperimentConfig& cfg, std::ostream& out);

/// A CSV path, or `synth:blobs:key=value,...` with keys classes, per_class,
/// features, spread, seed, name. Relative paths resolve against `base_dir`.
Dataset load_dataset_source(std::string_view source, const std::filesystem::path& base_dir = {});

struct ExperimentRecord {
    std::string dataset;
    Method method = Method::bagging_ih;
    double noise = 0.0;
    int repetition = 0;
    int fold = 0;
    double accuracy = 0.0;
    std::optional<double> freq_noisy;
    Seed seed = 0;

    bool operator==(const ExperimentRecord&) const = default;
};

struct CellFailure {
    std::string dataset;
    std::optional<Method> method; ///< empty when the dataset itself failed
    double noise = 0.0;
    int repetition = -1;
    std::string message;
};

struct ExperimentResult {
    std::vector<ExperimentRecord> records;
    std::vector<CellFailure> failures;
};

/// Seed of one (dataset, noise level, repetition) unit; fold split and noise
/// masks derive from it.
Seed unit_seed(Seed master, std::string_view dataset, double noise, int repetition);

/// Repeated stratified k-fold protocol over every dataset, noise level and
/// repetition. Per fold: fit the scaler on the training part, scale both
/// parts, corrupt only the training labels, train every configured method on
/// the same noisy fold and score it on the clean test fold. A failing method
/// drops its records for that repetition and logs a CellFailure instead.
/// Output order is canonical (dataset, noise, repetition, fold, method), so
/// the result does not depend on the thread count.
ExperimentResult run_experiment(const ExperimentConfig& cfg, const std::vector<Dataset>& datasets);

/// Loads cfg.datasets and runs them. Unloadable datasets become failures.
ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                const std::filesystem::path& base_dir = {});

/// Trains and scores a single method on one prepared fold.
ExperimentRecord run_method(Method method, const ExperimentConfig& cfg, const Dataset& noisy_train,
                            const NoiseRecord& noise, const Dataset& test, Seed seed);

void write_records_csv(const std::vector<ExperimentRecord>& records, std::ostream& out);
void write_records_csv(const std::vector<ExperimentRecord>& records,
                       const std::filesystem::path& path);
std::vector<ExperimentRecord> read_records_csv(std::istream& in);
std::vector<ExperimentRecord> read_records_csv(const std::filesystem::path& path);

void write_failures_csv(const std::vector<CellFailure>& failures, std::ostream& out);

/// Mean and spread of fold-mean accuracy for one (dataset, method, noise).
struct CellSummary {
    std::string dataset;
    Method method = Method::bagging_ih;
    double noise = 0.0;
    /// Accuracy averaged over the folds of each repetition, by repetition id.
    std::vector<double> repetition_means;
    double mean = 0.0;
    std::optional<double> std; ///< absent with a single repetition
};

/// Groups records by (dataset, method, noise) in first-appearance order.
std::vector<CellSummary> aggregate(const std::vector<ExperimentRecord>& records);

} // namespace ihbag
