#include "ihbag/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>

#include <fmt/format.h>

#include "ihbag/error.hpp"
#include "ihbag/stats.hpp"
#include "text.hpp"

namespace ihbag {

namespace {

bool same_noise(double a, double b) { return std::llround(a * 1e6) == std::llround(b * 1e6); }

std::string format_p(double p) {
    if (p >= 1e-4) return fmt::format("{:.4f}", p);
    return fmt::format("{:.4e}", p);
}

std::vector<double> noise_levels(const std::vector<ExperimentRecord>& records) {
    std::vector<double> levels;
    for (const auto& r : records) {
        if (std::none_of(levels.begin(), levels.end(), [&](double l) { return same_noise(l, r.noise); }))
            levels.push_back(r.noise);
    }
    std::sort(levels.begin(), levels.end());
    return levels;
}

} // namespace

std::string accuracy_table(const std::vector<CellSummary>& cells, double noise, Method reference) {
    std::vector<std::string> datasets;
    std::vector<Method> methods;
    std::map<std::pair<std::string, Method>, const CellSummary*> lookup;
    for (const auto& c : cells) {
        if (!same_noise(c.noise, noise)) continue;
        if (std::find(datasets.begin(), datasets.end(), c.dataset) == datasets.end())
            datasets.push_back(c.dataset);
        if (std::find(methods.begin(), methods.end(), c.method) == methods.end())
            methods.push_back(c.method);
        lookup[{c.dataset, c.method}] = &c;
    }
    if (datasets.empty()) return {};
    std::sort(methods.begin(), methods.end());
    if (std::find(methods.begin(), methods.end(), reference) == methods.end()) reference = methods.front();

    std::string out = fmt::format("### Noise level {:.0f}%\n\n| Dataset |", noise * 100.0);
    for (Method m : methods) out += fmt::format(" {} |", method_label(m));
    out += "\n|---|";
    for (std::size_t i = 0; i < methods.size(); ++i) out += "---|";
    out += '\n';

    for (const auto& d : datasets) {
        double best = -1.0;
        for (Method m : methods)
            if (auto it = lookup.find({d, m}); it != lookup.end()) best = std::max(best, it->second->mean);
        out += fmt::format("| {} |", d);
        for (Method m : methods) {
            const auto it = lookup.find({d, m});
            if (it == lookup.end()) {
                out += " n/a |";
                continue;
            }
            const auto& c = *it->second;
            std::string cell = c.std ? fmt::format("{:.2f} ± {:.2f}", 100.0 * c.mean, 100.0 * *c.std)
                                     : fmt::format("{:.2f}", 100.0 * c.mean);
            if (c.mean == best) cell = "**" + cell + "**";
            out += " " + cell + " |";
        }
        out += '\n';
    }

    // Dataset means and paired tests use only datasets where both methods ran.
    std::vector<double> overall(methods.size(), 0.0);
    std::vector<bool> has_overall(methods.size(), false);
    for (std::size_t mi = 0; mi < methods.size(); ++mi) {
        std::vector<double> v;
        for (const auto& d : datasets)
            if (auto it = lookup.find({d, methods[mi]}); it != lookup.end()) v.push_back(it->second->mean);
        if (!v.empty()) {
            overall[mi] = mean(v);
            has_overall[mi] = true;
        }
    }
    const double best_overall = *std::max_element(overall.begin(), overall.end());
    out += "| **Mean** |";
    for (std::size_t mi = 0; mi < methods.size(); ++mi) {
        if (!has_overall[mi]) {
            out += " n/a |";
            continue;
        }
        auto cell = fmt::format("{:.2f}", 100.0 * overall[mi]);
        if (overall[mi] == best_overall) cell = "**" + cell + "**";
        out += " " + cell + " |";
    }
    out += "\n| **p-value** |";
    for (Method m : methods) {
        if (m == reference) {
            out += " - |";
            continue;
        }
        std::vector<double> a, b;
        for (const auto& d : datasets) {
            const auto ia = lookup.find({d, reference});
            const auto ib = lookup.find({d, m});
            if (ia != lookup.end() && ib != lookup.end()) {
                a.push_back(ia->second->mean);
                b.push_back(ib->second->mean);
            }
        }
        out += a.empty() ? std::string(" n/a |")
                         : " " + format_p(wilcoxon_paired(a, b).p_value) + " |";
    }
    out += '\n';
    return out;
}

std::vector<BoxplotRow> freq_noisy_boxplot(const std::vector<ExperimentRecord>& records,
                                           double noise, Method method) {
    std::vector<std::string> order;
    std::map<std::string, std::vector<double>> values;
    for (const auto& r : records) {
        if (r.method != method || !same_noise(r.noise, noise) || !r.freq_noisy) continue;
        if (!values.contains(r.dataset)) order.push_back(r.dataset);
        values[r.dataset].push_back(*r.freq_noisy);
    }
    std::vector<BoxplotRow> rows;
    for (const auto& d : order) {
        const auto& v = values[d];
        rows.push_back({d, quantile(v, 0.0), quantile(v, 0.25), quantile(v, 0.5), quantile(v, 0.75),
                        quantile(v, 1.0), noise});
    }
    return rows;
}

std::string boxplot_csv(const std::vector<BoxplotRow>& rows) {
    std::string out = "dataset,min,q1,median,q3,max,reference\n";
    for (const auto& r : rows) {
        out += fmt::format("{},{},{},{},{},{},{}\n", r.dataset, text::shortest(r.min),
                           text::shortest(r.q1), text::shortest(r.median), text::shortest(r.q3),
                           text::shortest(r.max), text::shortest(r.reference));
    }
    return out;
}

std::string accuracy_vs_noise_csv(const std::vector<CellSummary>& cells) {
    std::vector<std::pair<double, Method>> keys;
    std::map<std::pair<std::int64_t, Method>, std::vector<double>> means;
    for (const auto& c : cells) {
        const auto key = std::make_pair(static_cast<std::int64_t>(std::llround(c.noise * 1e6)), c.method);
        if (!means.contains(key)) keys.emplace_back(c.noise, c.method);
        means[key].push_back(c.mean);
    }
    std::sort(keys.begin(), keys.end());
    std::string out = "noise,method,mean_accuracy\n";
    for (const auto& [noise, m] : keys) {
        const auto& v = means[{static_cast<std::int64_t>(std::llround(noise * 1e6)), m}];
        out += fmt::format("{},{},{}\n", text::shortest(noise), method_name(m), text::shortest(mean(v)));
    }
    return out;
}

std::string write_report(const std::vector<ExperimentRecord>& records,
                         const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    const auto cells = aggregate(records);
    const auto levels = noise_levels(records);

    std::string md = "# Accuracy by noise level\n\n"
                     "Mean and standard deviation over repetitions of the fold-mean accuracy (%).\n"
                     "The last row holds two-tailed Wilcoxon signed-rank p-values against Bagging-IH.\n\n";
    for (double level : levels) md += accuracy_table(cells, level) + '\n';

    auto write = [&](const std::filesystem::path& name, const std::string& body) {
        std::ofstream out(out_dir / name, std::ios::binary);
        if (!out) throw Error("cannot write " + (out_dir / name).string());
        out << body;
    };
    write("report.md", md);
    write("accuracy_vs_noise.csv", accuracy_vs_noise_csv(cells));
    for (double level : levels) {
        const auto rows = freq_noisy_boxplot(records, level);
        if (rows.empty()) continue;
        write(fmt::format("freq_noisy_boxplot_{}.csv", text::shortest(level)), boxplot_csv(rows));
    }
    return md;
}

} // namespace ihbag
