#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace ihbag {

struct Summary {
    double mean = 0.0;
    double std = 0.0; ///< sample standard deviation (n - 1 denominator)
};

double mean(std::span<const double> values);

/// Requires at least two values.
Summary summarize(std::span<const double> values);

/// Linear-interpolation quantile of unsorted values (the usual "type 7").
double quantile(std::span<const double> values, double q);

enum class WilcoxonMethod { exact, normal_approximation };

std::string_view wilcoxon_method_name(WilcoxonMethod m);

struct WilcoxonResult {
    double w_plus = 0.0;
    double w_minus = 0.0;
    double statistic = 0.0; ///< min(w_plus, w_minus)
    double p_value = 1.0;   ///< two-tailed, in (0, 1]
    WilcoxonMethod method = WilcoxonMethod::exact;
    std::size_t n_effective = 0; ///< differences left after dropping zeros

    bool rejects(double alpha = 0.05) const { return p_value < alpha; }
};

/// Average ranks (1-based) of |d| over the non-zero differences, in input order.
std::vector<double> signed_rank_magnitudes(std::span<const double> nonzero_diffs);

/// Two-tailed Wilcoxon signed-rank test of symmetry about zero.
///
/// Zero differences are dropped and tied magnitudes share their average rank.
/// Up to `exact_limit` remaining differences the null distribution of W+ over
/// all 2^n sign patterns is counted exactly; beyond it a normal approximation
/// with tie-corrected variance and continuity correction is used. All-zero
/// input yields p = 1 (exact).
WilcoxonResult wilcoxon_signed_rank(std::span<const double> diffs, std::size_t exact_limit = 20);

/// Exact two-tailed p over all sign patterns; usable for n up to ~60.
double wilcoxon_exact_p(std::span<const double> diffs);

/// Normal-approximation two-tailed p regardless of n.
double wilcoxon_normal_p(std::span<const double> diffs);

/// Test on paired samples a[i] - b[i].
WilcoxonResult wilcoxon_paired(std::span<const double> a, std::span<const double> b);

} // namespace ihbag
