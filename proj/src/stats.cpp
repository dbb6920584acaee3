#include "ihbag/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>

#include "ihbag/error.hpp"

namespace ihbag {

double mean(std::span<const double> values) {
    if (values.empty()) throw ValidationError("mean of an empty sample");
    return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

Summary summarize(std::span<const double> values) {
    if (values.size() < 2)
        throw ValidationError("standard deviation needs at least two values");
    Summary s;
    s.mean = mean(values);
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(ss / static_cast<double>(values.size() - 1));
    return s;
}

double quantile(std::span<const double> values, double q) {
    if (values.empty()) throw ValidationError("quantile of an empty sample");
    if (!(q >= 0.0 && q <= 1.0)) throw ValidationError("quantile level outside [0, 1]");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

std::string_view wilcoxon_method_name(WilcoxonMethod m) {
    return m == WilcoxonMethod::exact ? "exact" : "approx";
}

namespace {

std::vector<double> drop_zeros(std::span<const double> diffs) {
    std::vector<double> out;
    for (double d : diffs) {
        if (!std::isfinite(d)) throw ValidationError("wilcoxon: non-finite difference");
        if (d != 0.0) out.push_back(d);
    }
    return out;
}

struct RankSums {
    std::vector<double> ranks;
    double w_plus = 0.0;
    double w_minus = 0.0;
};

RankSums rank_sums(const std::vector<double>& nonzero) {
    RankSums r;
    r.ranks = signed_rank_magnitudes(nonzero);
    for (std::size_t i = 0; i < nonzero.size(); ++i)
        (nonzero[i] > 0 ? r.w_plus : r.w_minus) += r.ranks[i];
    return r;
}

double clamp_p(double p) {
    return std::clamp(p, std::numeric_limits<double>::min(), 1.0);
}

// Ranks are multiples of 1/2, so doubled ranks are integers and the null
// distribution of 2*W+ is a subset-sum count over them.
double exact_p(const RankSums& r) {
    const std::size_t n = r.ranks.size();
    if (n == 0) return 1.0;
    std::vector<std::uint64_t> doubled(n);
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        doubled[i] = static_cast<std::uint64_t>(std::llround(2.0 * r.ranks[i]));
        total += doubled[i];
    }
    // Counts reach 2^n; long double keeps them exact well past n = 20.
    std::vector<long double> ways(total + 1, 0.0L);
    ways[0] = 1.0L;
    std::uint64_t reach = 0;
    for (auto w : doubled) {
        reach += w;
        for (std::uint64_t s = reach; s >= w; --s) {
            ways[s] += ways[s - w];
            if (s == w) break;
        }
    }
    const auto observed =
        static_cast<std::uint64_t>(std::llround(2.0 * std::min(r.w_plus, r.w_minus)));
    long double tail = 0.0L;
    for (std::uint64_t s = 0; s <= observed; ++s) tail += ways[s];
    const long double p = 2.0L * tail / std::ldexp(1.0L, static_cast<int>(n));
    return clamp_p(static_cast<double>(p));
}

double normal_p(const RankSums& r, const std::vector<double>& nonzero) {
    const auto n = static_cast<double>(nonzero.size());
    if (nonzero.empty()) return 1.0;
    const double mu = n * (n + 1.0) / 4.0;
    double var = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0;

    std::vector<double> mags(nonzero.size());
    std::transform(nonzero.begin(), nonzero.end(), mags.begin(), [](double d) { return std::abs(d); });
    std::sort(mags.begin(), mags.end());
    for (std::size_t i = 0; i < mags.size();) {
        std::size_t j = i;
        while (j < mags.size() && mags[j] == mags[i]) ++j;
        const auto t = static_cast<double>(j - i);
        var -= (t * t * t - t) / 48.0;
        i = j;
    }
    if (var <= 0.0) return 1.0;
    const double z = std::max(0.0, std::abs(r.w_plus - mu) - 0.5) / std::sqrt(var);
    return clamp_p(std::erfc(z / std::sqrt(2.0)));
}

} // namespace

std::vector<double> signed_rank_magnitudes(std::span<const double> nonzero_diffs) {
    const std::size_t n = nonzero_diffs.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::abs(nonzero_diffs[a]) < std::abs(nonzero_diffs[b]);
    });
    std::vector<double> ranks(n);
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        const double mag = std::abs(nonzero_diffs[order[i]]);
        while (j < n && std::abs(nonzero_diffs[order[j]]) == mag) ++j;
        // Positions i..j-1 hold ranks i+1..j; each gets their average.
        const double avg = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t t = i; t < j; ++t) ranks[order[t]] = avg;
        i = j;
    }
    return ranks;
}

WilcoxonResult wilcoxon_signed_rank(std::span<const double> diffs, std::size_t exact_limit) {
    if (diffs.empty()) throw ValidationError("wilcoxon: no differences");
    const auto nonzero = drop_zeros(diffs);
    const auto sums = rank_sums(nonzero);

    WilcoxonResult out;
    out.w_plus = sums.w_plus;
    out.w_minus = sums.w_minus;
    out.statistic = std::min(sums.w_plus, sums.w_minus);
    out.n_effective = nonzero.size();
    if (nonzero.size() <= exact_limit) {
        out.method = WilcoxonMethod::exact;
        out.p_value = exact_p(sums);
    } else {
        out.method = WilcoxonMethod::normal_approximation;
        out.p_value = normal_p(sums, nonzero);
    }
    return out;
}

double wilcoxon_exact_p(std::span<const double> diffs) {
    const auto nonzero = drop_zeros(diffs);
    if (nonzero.size() > 60) throw ValidationError("wilcoxon: exact p limited to 60 differences");
    return exact_p(rank_sums(nonzero));
}

double wilcoxon_normal_p(std::span<const double> diffs) {
    const auto nonzero = drop_zeros(diffs);
    return normal_p(rank_sums(nonzero), nonzero);
}

WilcoxonResult wilcoxon_paired(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw DimensionError("wilcoxon: paired samples differ in length");
    std::vector<double> diffs(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) diffs[i] = a[i] - b[i];
    return wilcoxon_signed_rank(diffs);
}

} // namespace ihbag
