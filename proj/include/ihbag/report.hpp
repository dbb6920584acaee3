#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ihbag/experiments.hpp"

namespace ihbag {

/// Markdown table for one noise level: one row per dataset with
/// "mean ± std" in percent (best mean in bold), a mean row across datasets,
/// and a final row of two-tailed Wilcoxon p-values of `reference` against
/// every other method, paired over datasets.
std::string accuracy_table(const std::vector<CellSummary>& cells, double noise,
                           Method reference = Method::bagging_ih);

struct BoxplotRow {
    std::string dataset;
    double min = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double max = 0.0;
    double reference = 0.0; ///< expected noisy fraction under uniform bagging
};

/// Five-number summary of freq_noisy per dataset for `method` at `noise`.
std::vector<BoxplotRow> freq_noisy_boxplot(const std::vector<ExperimentRecord>& records,
                                           double noise, Method method = Method::bagging_ih);

std::string boxplot_csv(const std::vector<BoxplotRow>& rows);

/// noise,method,mean_accuracy where the mean is over datasets of the
/// per-dataset mean accuracy.
std::string accuracy_vs_noise_csv(const std::vector<CellSummary>& cells);

/// Writes report.md, accuracy_vs_noise.csv and one
/// freq_noisy_boxplot_<noise>.csv per noise level with freq_noisy data.
/// Returns the markdown.
std::string write_report(const std::vector<ExperimentRecord>& records,
                         const std::filesystem::path& out_dir);

} // namespace ihbag
