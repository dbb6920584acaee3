// Acceptance suite: one PASS/FAIL/SKIP line per criterion, non-zero exit on
// any FAIL. Criterion 7 needs local copies of pima, haberman and
// blood-transfusion (see find_real_dataset).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <fmt/format.h>

#include "oracles.hpp"
#include "ihbag/dataset.hpp"
#include "ihbag/ensemble.hpp"
#include "ihbag/experiments.hpp"
#include "ihbag/hardness.hpp"
#include "ihbag/random.hpp"
#include "ihbag/stats.hpp"

using namespace ihbag;
namespace fs = std::filesystem;

namespace {

enum class Status { pass, fail, skip };

int failures = 0;

void report(int id, Status s, const std::string& detail, double seconds) {
    const char* tag = s == Status::pass ? "PASS" : s == Status::fail ? "FAIL" : "SKIP";
    if (s == Status::fail) ++failures;
    std::cout << fmt::format("criterion {} {}: {} [{:.1f}s]", id, tag, detail, seconds) << std::endl;
}

template <class F>
void run(int id, F&& body) {
    const auto start = std::chrono::steady_clock::now();
    Status s = Status::fail;
    std::string detail;
    try {
        std::tie(s, detail) = body();
    } catch (const std::exception& e) {
        s = Status::fail;
        detail = std::string("exception: ") + e.what();
    }
    const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
    report(id, s, detail, took.count());
}

using Outcome = std::pair<Status, std::string>;

Status verdict(bool ok) { return ok ? Status::pass : Status::fail; }

// Shared synthetic benchmark: 3 classes x 200 instances, spread 0.15.
constexpr int bench_classes = 3;
constexpr std::size_t bench_per_class = 200;
constexpr std::size_t bench_features = 2;
constexpr double bench_spread = 0.15;

Dataset benchmark(Seed seed) {
    return synth_blobs(bench_classes, bench_per_class, bench_features, bench_spread, seed);
}

oracle::Points points(const Dataset& d) {
    oracle::Points p;
    for (std::size_t i = 0; i < d.size(); ++i) p.emplace_back(d.row(i).begin(), d.row(i).end());
    return p;
}

Dataset random_dataset(std::size_t n, std::size_t dims, int classes, Seed seed) {
    Engine eng(seed);
    Matrix x(n, dims);
    std::vector<int> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < dims; ++j) x(i, j) = uniform01(eng);
        y[i] = static_cast<int>(uniform_below(eng, static_cast<std::uint64_t>(classes)));
    }
    return Dataset("random", std::move(x), std::move(y), classes);
}

Outcome wilcoxon_floor() {
    std::vector<double> d(19);
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = 0.001 * static_cast<double>(i + 1);
    const auto r = wilcoxon_signed_rank(d);
    const auto shown = fmt::format("{:.4e}", r.p_value);
    const bool ok = r.method == WilcoxonMethod::exact && shown == "3.8147e-06";
    return {verdict(ok), fmt::format("19 positive differences -> exact p = {} (expected 3.8147e-06)", shown)};
}

Outcome wilcoxon_oracle() {
    Engine eng(mix_seed(2, "acceptance"));
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + uniform_below(eng, 12);
        std::vector<double> d(n);
        std::set<double> magnitudes;
        for (auto& v : d) {
            do {
                v = (uniform01(eng) - 0.5) * 10.0;
            } while (v == 0.0 || !magnitudes.insert(std::abs(v)).second);
        }
        worst = std::max(worst, std::abs(wilcoxon_signed_rank(d).p_value - oracle::wilcoxon_p(d)));
    }
    return {verdict(worst <= 1e-12),
            fmt::format("200 tie-free vectors, n <= 12: max |exact - enumeration| = {:.3g} (tol 1e-12)", worst)};
}

Outcome distribution_invariants() {
    Engine eng(mix_seed(3, "acceptance"));
    std::size_t violations = 0;
    double worst_sum = 0.0;
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 1 + uniform_below(eng, 400);
        const int k = 1 + static_cast<int>(uniform_below(eng, 10));
        std::vector<int> counts(n);
        for (auto& c : counts) c = static_cast<int>(uniform_below(eng, static_cast<std::uint64_t>(k) + 1));
        const HardnessProfile h(counts, k);
        const auto dist = selection_distribution(h);
        double sum = 0.0;
        for (double p : dist.probabilities) {
            violations += !(p > 0.0);
            sum += p;
        }
        worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
        // Strict monotonicity: harder means strictly less likely, equal hardness equal probability.
        std::vector<double> by_count(static_cast<std::size_t>(k) + 1, -1.0);
        for (std::size_t i = 0; i < n; ++i) {
            auto& slot = by_count[static_cast<std::size_t>(counts[i])];
            if (slot < 0) slot = dist.probabilities[i];
            violations += slot != dist.probabilities[i];
        }
        double previous = 2.0;
        for (double p : by_count) {
            if (p < 0) continue;
            violations += !(p < previous);
            previous = p;
        }
        // Uniform hardness at a random level gives exactly 1/n.
        const HardnessProfile flat(std::vector<int>(n, counts[0]), k);
        for (double p : selection_distribution(flat).probabilities) violations += p != 1.0 / static_cast<double>(n);
    }
    const bool ok = violations == 0 && worst_sum <= 1e-12;
    return {verdict(ok), fmt::format("500 random profiles: {} violations, max |sum - 1| = {:.3g}", violations,
                                     worst_sum)};
}

Outcome bagging_equivalence() {
    std::vector<Dataset> cases;
    // All one label: kDN = 0 everywhere.
    for (Seed s = 0; s < 5; ++s) {
        const auto d = random_dataset(40 + 10 * s, 3, 2, s);
        cases.push_back(d.with_labels(std::vector<int>(d.size(), 0)));
    }
    // Far-apart opposite-label pairs with k = 1: kDN = 1 everywhere.
    Matrix x(40, 2);
    std::vector<int> y(40);
    for (std::size_t i = 0; i < 40; ++i) {
        x(i, 0) = 10.0 * static_cast<double>(i / 2) + 0.1 * static_cast<double>(i % 2);
        x(i, 1) = 3.0 * static_cast<double>(i / 2);
        y[i] = static_cast<int>(i % 2);
    }
    const Dataset pairs("pairs", std::move(x), std::move(y), 2);

    ClassifierSpec spec;
    spec.epochs = 5;
    std::size_t checked = 0, mismatched = 0;
    auto compare = [&](const Dataset& d, int k, Seed seed) {
        const auto h = kdn(d, k);
        for (std::size_t i = 1; i < h.size(); ++i)
            if (h.disagreeing(i) != h.disagreeing(0)) throw std::runtime_error("hardness not constant");
        const auto a = generate_bagging_ih(d, 10, d.size(), spec, k, seed);
        const auto b = generate_bagging(d, 10, d.size(), spec, seed);
        ++checked;
        mismatched += a.bootstraps() != b.bootstraps();
    };
    for (std::size_t c = 0; c < cases.size(); ++c)
        for (Seed seed = 0; seed < 4; ++seed) compare(cases[c], 5, mix_seed(seed, c));
    for (Seed seed = 0; seed < 4; ++seed) compare(pairs, 1, seed);
    return {verdict(mismatched == 0),
            fmt::format("{} constant-kDN pools compared, {} with differing bootstrap lists", checked, mismatched)};
}

// Bagging-IH and Bagging on the benchmark at four noise rates, 20 repetitions.
struct NoiseSweep {
    std::vector<ExperimentRecord> records;
    std::vector<CellFailure> failures;
};

const NoiseSweep& noise_sweep() {
    static const NoiseSweep sweep = [] {
        ExperimentConfig cfg;
        cfg.methods = {Method::bagging_ih, Method::bagging};
        cfg.noise_levels = {0.1, 0.2, 0.3, 0.4};
        cfg.repetitions = 20;
        auto res = run_experiment(cfg, {benchmark(1)});
        return NoiseSweep{std::move(res.records), std::move(res.failures)};
    }();
    return sweep;
}

Outcome freq_noisy_separation() {
    const auto& sweep = noise_sweep();
    if (!sweep.failures.empty()) return {Status::fail, "sweep failure: " + sweep.failures.front().message};
    bool ok = true;
    std::string detail;
    for (double rate : {0.1, 0.2, 0.3, 0.4}) {
        double ih = 0, bag = 0;
        std::size_t n_ih = 0, n_bag = 0;
        for (const auto& r : sweep.records) {
            if (std::abs(r.noise - rate) > 1e-9 || !r.freq_noisy) continue;
            (r.method == Method::bagging_ih ? ih : bag) += *r.freq_noisy;
            ++(r.method == Method::bagging_ih ? n_ih : n_bag);
        }
        if (n_ih == 0 || n_bag == 0) return {Status::fail, "missing freq_noisy records"};
        ih /= static_cast<double>(n_ih);
        bag /= static_cast<double>(n_bag);
        ok = ok && ih < rate && std::abs(bag - rate) <= 0.02;
        detail += fmt::format("{}rate {}: IH {:.4f}, Bagging {:.4f}", detail.empty() ? "" : "; ", rate, ih, bag);
    }
    return {verdict(ok), detail};
}

std::map<std::pair<std::string, Method>, double> dataset_means(const std::vector<ExperimentRecord>& records,
                                                               double noise) {
    std::map<std::pair<std::string, Method>, double> out;
    for (const auto& c : aggregate(records))
        if (std::abs(c.noise - noise) < 1e-9) out[{c.dataset, c.method}] = c.mean;
    return out;
}

Outcome noisy_regime_advantage() {
    const auto& sweep = noise_sweep();
    if (!sweep.failures.empty()) return {Status::fail, "sweep failure: " + sweep.failures.front().message};
    const std::string name = benchmark(1).name();
    bool ok = true;
    std::string detail;
    for (double rate : {0.3, 0.4}) {
        const auto means = dataset_means(sweep.records, rate);
        const double ih = means.at({name, Method::bagging_ih});
        const double bag = means.at({name, Method::bagging});
        ok = ok && ih > bag;
        detail += fmt::format("rate {}: IH {:.2f}% vs Bagging {:.2f}% over 20 seeds; ", rate, 100 * ih, 100 * bag);
    }

    // Ten generator seeds give ten dataset variants, paired over variants.
    ExperimentConfig cfg;
    cfg.methods = {Method::bagging_ih, Method::bagging};
    cfg.noise_levels = {0.3, 0.4};
    cfg.repetitions = 4;
    std::vector<Dataset> variants;
    for (Seed s = 101; s <= 110; ++s) variants.push_back(benchmark(s));
    const auto res = run_experiment(cfg, variants);
    if (!res.failures.empty()) return {Status::fail, "variant failure: " + res.failures.front().message};
    for (double rate : {0.3, 0.4}) {
        const auto means = dataset_means(res.records, rate);
        std::vector<double> a, b;
        for (const auto& v : variants) {
            a.push_back(means.at({v.name(), Method::bagging_ih}));
            b.push_back(means.at({v.name(), Method::bagging}));
        }
        const auto w = wilcoxon_paired(a, b);
        ok = ok && w.method == WilcoxonMethod::exact && w.p_value < 0.05 && mean(a) > mean(b);
        detail += fmt::format("rate {}: 10 variants W+={} W-={} exact p={:.4g}; ", rate, w.w_plus, w.w_minus,
                              w.p_value);
    }
    detail.resize(detail.size() - 2);
    return {verdict(ok), detail};
}

std::optional<fs::path> find_real_dataset(const std::vector<std::string>& names) {
    std::vector<fs::path> dirs;
    if (const char* env = std::getenv("IHBAG_DATA_DIR")) dirs.emplace_back(env);
    dirs.emplace_back(fs::path(IHBAG_SOURCE_DIR) / "data");
    for (const auto& dir : dirs)
        for (const auto& n : names)
            if (fs::exists(dir / (n + ".csv"))) return dir / (n + ".csv");
    return std::nullopt;
}

Outcome real_data_spot_check() {
    struct Target {
        std::vector<std::string> names;
        double accuracy;
    };
    const std::vector<Target> targets{{{"pima", "pima-indians-diabetes"}, 76.71},
                                      {{"haberman"}, 74.39},
                                      {{"blood-transfusion", "transfusion"}, 78.51}};
    std::vector<Dataset> data;
    for (const auto& t : targets) {
        const auto path = find_real_dataset(t.names);
        if (!path)
            return {Status::skip, fmt::format("{}.csv not found in $IHBAG_DATA_DIR or data/", t.names.front())};
        data.push_back(load_csv(*path));
    }
    ExperimentConfig cfg;
    cfg.methods = {Method::bagging_ih};
    cfg.noise_levels = {0.0};
    const auto res = run_experiment(cfg, data);
    if (!res.failures.empty()) return {Status::fail, "failure: " + res.failures.front().message};
    const auto means = dataset_means(res.records, 0.0);
    bool ok = true;
    std::string detail;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const double got = 100.0 * means.at({data[i].name(), Method::bagging_ih});
        ok = ok && std::abs(got - targets[i].accuracy) <= 3.0;
        detail += fmt::format("{}{}: {:.2f} vs {:.2f}", i ? "; " : "", data[i].name(), got, targets[i].accuracy);
    }
    return {verdict(ok), detail};
}

Outcome kdn_oracle() {
    std::size_t datasets = 0, mismatched = 0, off_grid = 0;
    const std::vector<double> grid{0.0, 0.2, 0.4, 0.6, 0.8, 1.0};
    for (Seed seed = 0; seed < 40; ++seed) {
        const auto d = random_dataset(50, 1 + seed % 6, 2 + static_cast<int>(seed % 4), mix_seed(8, seed));
        const auto h = kdn(d, 5);
        const auto expect = oracle::kdn(points(d), std::vector<int>(d.labels().begin(), d.labels().end()), 5);
        ++datasets;
        for (std::size_t i = 0; i < d.size(); ++i) {
            mismatched += h.value(i) != expect[i];
            off_grid += std::find(grid.begin(), grid.end(), h.value(i)) == grid.end();
        }
    }
    return {verdict(mismatched == 0 && off_grid == 0),
            fmt::format("{} random 50-instance datasets, k=5: {} mismatches, {} values off the 0.2 grid", datasets,
                        mismatched, off_grid)};
}

Outcome determinism() {
    ExperimentConfig cfg;
    cfg.datasets = {"synth:blobs:classes=3,per_class=40,features=2,spread=0.15,seed=1",
                    "synth:blobs:classes=2,per_class=50,features=4,spread=0.3,seed=2"};
    cfg.noise_levels = {0.0, 0.2, 0.4};
    cfg.repetitions = 3;
    const auto dir = fs::temp_directory_path() / "ihbag_acceptance";
    fs::create_directories(dir);
    auto run_to = [&](const fs::path& path, unsigned threads) {
        auto c = cfg;
        c.threads = threads;
        const auto res = run_experiment(c);
        if (!res.failures.empty()) throw std::runtime_error(res.failures.front().message);
        write_records_csv(res.records, path);
        return res.records.size();
    };
    const auto rows = run_to(dir / "a.csv", 1);
    run_to(dir / "b.csv", 2);
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
    };
    const auto a = slurp(dir / "a.csv");
    const bool same = !a.empty() && a == slurp(dir / "b.csv");
    fs::remove_all(dir);
    return {verdict(same), fmt::format("two sweeps ({} records, {} bytes) {}", rows, a.size(),
                                       same ? "byte-identical" : "differ")};
}

} // namespace

int main() {
    run(1, wilcoxon_floor);
    run(2, wilcoxon_oracle);
    run(3, distribution_invariants);
    run(4, bagging_equivalence);
    run(5, freq_noisy_separation);
    run(6, noisy_regime_advantage);
    run(7, real_data_spot_check);
    run(8, kdn_oracle);
    run(9, determinism);
    return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
