#include "ihbag/experiments.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <map>
#include <tuple>
#include <thread>

#include <fmt/format.h>

#include "ihbag/error.hpp"
#include "ihbag/stats.hpp"
#include "text.hpp"

namespace ihbag {

Seed unit_seed(Seed master, std::string_view dataset, double noise, int repetition) {
    // Noise levels enter the hash at micro resolution so 0.1 and 0.1000000001
    // (read back from text) map to the same unit.
    const auto noise_key = static_cast<std::int64_t>(std::llround(noise * 1e6));
    return mix_seed(master, dataset, noise_key, repetition);
}

ExperimentRecord run_method(Method method, const ExperimentConfig& cfg, const Dataset& noisy_train,
                            const NoiseRecord& noise, const Dataset& test, Seed seed) {
    ExperimentRecord rec;
    rec.dataset = noisy_train.name();
    rec.method = method;
    rec.noise = noise.rate;
    rec.seed = seed;
    const std::size_t n_b = cfg.bootstrap_size == 0 ? noisy_train.size() : cfg.bootstrap_size;

    switch (method) {
    case Method::bagging_ih:
    case Method::bagging: {
        const auto pool =
            method == Method::bagging_ih
                ? generate_bagging_ih(noisy_train, cfg.pool_size, n_b, cfg.classifier, cfg.k, seed)
                : generate_bagging(noisy_train, cfg.pool_size, n_b, cfg.classifier, seed);
        rec.accuracy = accuracy(pool, test);
        rec.freq_noisy = freq_noisy(pool, noise);
        break;
    }
    case Method::random_subspace: {
        const auto pool = generate_random_subspace(noisy_train, cfg.pool_size, cfg.feature_fraction,
                                                   cfg.classifier, seed);
        rec.accuracy = accuracy(pool, test);
        break;
    }
    case Method::perceptron_ova: {
        ClassifierSpec spec = cfg.classifier;
        spec.seed = seed;
        const auto model = train_perceptron_ova(noisy_train, {}, {}, spec);
        rec.accuracy = accuracy(model, test);
        break;
    }
    }
    return rec;
}

namespace {

struct Unit {
    std::size_t dataset;
    std::size_t noise;
    int repetition;
};

struct UnitOutput {
    std::vector<ExperimentRecord> records;
    std::vector<CellFailure> failures;
};

UnitOutput run_unit(const ExperimentConfig& cfg, const Dataset& data, double noise, int repetition) {
    UnitOutput out;
    const Seed seed = unit_seed(cfg.master_seed, data.name(), noise, repetition);

    std::vector<FoldSplit> folds;
    try {
        folds = stratified_kfold(data, cfg.folds, mix_seed(seed, "split"));
    } catch (const std::exception& e) {
        for (Method m : cfg.methods)
            out.failures.push_back({data.name(), m, noise, repetition, e.what()});
        return out;
    }

    // Per method: records for this repetition, or the failure that voided them.
    std::vector<std::vector<ExperimentRecord>> per_method(cfg.methods.size());
    std::vector<std::optional<std::string>> failed(cfg.methods.size());

    for (const auto& fold : folds) {
        const auto train_raw = data.subset(fold.train_indices);
        const auto test_raw = data.subset(fold.test_indices);
        const auto scaler = fit_scaler(train_raw);
        const auto train = apply_scaler(scaler, train_raw);
        const auto test = apply_scaler(scaler, test_raw);
        auto noisy = inject_label_noise(train.labels(), train.class_count(), noise,
                                        mix_seed(seed, "noise", fold.fold_id));
        const auto noisy_train = train.with_labels(std::move(noisy.labels));

        for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi) {
            if (failed[mi]) continue;
            const Method m = cfg.methods[mi];
            try {
                auto rec = run_method(m, cfg, noisy_train, noisy.record, test,
                                      mix_seed(seed, "method", method_name(m), fold.fold_id));
                rec.noise = noise;
                rec.repetition = repetition;
                rec.fold = fold.fold_id;
                per_method[mi].push_back(std::move(rec));
            } catch (const std::exception& e) {
                failed[mi] = e.what();
            }
        }
    }

    // Canonical order within a unit: fold, then method in config order.
    std::vector<ExperimentRecord> ordered;
    for (int f = 0; f < cfg.folds; ++f) {
        for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi) {
            if (failed[mi]) continue;
            for (auto& r : per_method[mi])
                if (r.fold == f) ordered.push_back(std::move(r));
        }
    }
    out.records = std::move(ordered);
    for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi) {
        if (failed[mi])
            out.failures.push_back({data.name(), cfg.methods[mi], noise, repetition, *failed[mi]});
    }
    return out;
}

} // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg, const std::vector<Dataset>& datasets) {
    cfg.validate();
    std::vector<Unit> units;
    for (std::size_t d = 0; d < datasets.size(); ++d)
        for (std::size_t n = 0; n < cfg.noise_levels.size(); ++n)
            for (int r = 0; r < cfg.repetitions; ++r) units.push_back({d, n, r});

    std::vector<UnitOutput> outputs(units.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < units.size(); i = next++) {
            const auto& u = units[i];
            outputs[i] = run_unit(cfg, datasets[u.dataset], cfg.noise_levels[u.noise], u.repetition);
        }
    };

    unsigned threads = cfg.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                        : cfg.threads;
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(units.size(), 1)));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }

    ExperimentResult result;
    for (auto& o : outputs) {
        for (auto& r : o.records) result.records.push_back(std::move(r));
        for (auto& f : o.failures) result.failures.push_back(std::move(f));
    }
    return result;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, const std::filesystem::path& base_dir) {
    std::vector<Dataset> datasets;
    std::vector<CellFailure> load_failures;
    for (const auto& source : cfg.datasets) {
        try {
            datasets.push_back(load_dataset_source(source, base_dir));
        } catch (const std::exception& e) {
            load_failures.push_back({source, std::nullopt, 0.0, -1, e.what()});
        }
    }
    auto result = run_experiment(cfg, datasets);
    result.failures.insert(result.failures.begin(), load_failures.begin(), load_failures.end());
    return result;
}

void write_records_csv(const std::vector<ExperimentRecord>& records, std::ostream& out) {
    out << "dataset,method,noise,repetition,fold,accuracy,freq_noisy,seed\n";
    for (const auto& r : records) {
        out << r.dataset << ',' << method_name(r.method) << ',' << text::shortest(r.noise) << ','
            << r.repetition << ',' << r.fold << ',' << text::shortest(r.accuracy) << ',';
        if (r.freq_noisy) out << text::shortest(*r.freq_noisy);
        out << ',' << r.seed << '\n';
    }
}

void write_records_csv(const std::vector<ExperimentRecord>& records,
                       const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    write_records_csv(records, out);
}

std::vector<ExperimentRecord> read_records_csv(std::istream& in) {
    std::vector<ExperimentRecord> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (text::trim(line).empty()) continue;
        if (line_no == 1 && line.rfind("dataset,", 0) == 0) continue;
        const auto f = text::split(line, ',');
        if (f.size() != 8)
            throw ParseError(fmt::format("records line {}: expected 8 columns, got {}", line_no, f.size()));
        ExperimentRecord r;
        r.dataset = std::string(f[0]);
        r.method = parse_method(f[1]);
        double freq = 0.0;
        if (!text::parse_double(f[2], r.noise) || !text::parse_int(f[3], r.repetition) ||
            !text::parse_int(f[4], r.fold) || !text::parse_double(f[5], r.accuracy) ||
            !text::parse_int(f[7], r.seed) || (!f[6].empty() && !text::parse_double(f[6], freq)))
            throw ParseError(fmt::format("records line {}: malformed field", line_no));
        if (!f[6].empty()) r.freq_noisy = freq;
        if (!(r.accuracy >= 0.0 && r.accuracy <= 1.0))
            throw ValidationError(fmt::format("records line {}: accuracy outside [0, 1]", line_no));
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<ExperimentRecord> read_records_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    return read_records_csv(in);
}

void write_failures_csv(const std::vector<CellFailure>& failures, std::ostream& out) {
    out << "dataset,method,noise,repetition,message\n";
    for (const auto& f : failures) {
        std::string message = f.message;
        for (auto& c : message)
            if (c == ',' || c == '\n') c = ';';
        out << f.dataset << ',' << (f.method ? method_name(*f.method) : "") << ','
            << text::shortest(f.noise) << ',' << f.repetition << ',' << message << '\n';
    }
}

std::vector<CellSummary> aggregate(const std::vector<ExperimentRecord>& records) {
    struct Accum {
        std::map<int, std::pair<double, std::size_t>> by_rep; // sum, count
    };
    std::vector<CellSummary> cells;
    std::vector<Accum> accums;
    std::map<std::tuple<std::string, int, std::int64_t>, std::size_t> index;

    for (const auto& r : records) {
        const auto key = std::make_tuple(r.dataset, static_cast<int>(r.method),
                                         static_cast<std::int64_t>(std::llround(r.noise * 1e6)));
        auto [it, inserted] = index.try_emplace(key, cells.size());
        if (inserted) {
            cells.push_back({r.dataset, r.method, r.noise, {}, 0.0, std::nullopt});
            accums.emplace_back();
        }
        auto& slot = accums[it->second].by_rep[r.repetition];
        slot.first += r.accuracy;
        slot.second += 1;
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
        for (const auto& [rep, sum] : accums[i].by_rep)
            cells[i].repetition_means.push_back(sum.first / static_cast<double>(sum.second));
        const auto& means = cells[i].repetition_means;
        if (means.size() >= 2) {
            const auto s = summarize(means);
            cells[i].mean = s.mean;
            cells[i].std = s.std;
        } else {
            cells[i].mean = ihbag::mean(means);
        }
    }
    return cells;
}

} // namespace ihbag
