// Command-line front end: run experiment sweeps, emit reports, dump kDN
// hardness, compare result files with the Wilcoxon test, and write synthetic
// datasets.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "ihbag/dataset.hpp"
#include "ihbag/error.hpp"
#include "ihbag/experiments.hpp"
#include "ihbag/hardness.hpp"
#include "ihbag/report.hpp"
#include "ihbag/stats.hpp"

namespace fs = std::filesystem;
using namespace ihbag;

namespace {

int cmd_run(const fs::path& config_path, const fs::path& out_dir, std::optional<unsigned> threads) {
    auto cfg = load_config(config_path);
    if (threads) cfg.threads = *threads;
    if (cfg.datasets.empty()) throw ValidationError("config lists no datasets");
    const auto result = run_experiment(cfg, config_path.parent_path());
    fs::create_directories(out_dir);
    write_records_csv(result.records, out_dir / "records.csv");
    {
        std::ofstream out(out_dir / "config.txt");
        write_config(cfg, out);
    }
    if (!result.failures.empty()) {
        std::ofstream out(out_dir / "failures.csv");
        write_failures_csv(result.failures, out);
        std::cerr << fmt::format("warning: {} failed cells, see {}\n", result.failures.size(),
                                 (out_dir / "failures.csv").string());
    }
    std::cout << fmt::format("{} records written to {}\n", result.records.size(),
                             (out_dir / "records.csv").string());
    return 0;
}

int cmd_report(const fs::path& records_path, fs::path out_dir) {
    const auto records = read_records_csv(records_path);
    if (out_dir.empty()) out_dir = records_path.parent_path().empty() ? fs::path(".") : records_path.parent_path();
    std::cout << write_report(records, out_dir);
    return 0;
}

int cmd_hardness(const fs::path& data_path, int k, bool raw, const fs::path& out_path) {
    auto d = load_csv(data_path);
    if (!raw) d = apply_scaler(fit_scaler(d), d);
    const auto h = kdn(d, k);
    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw Error("cannot write " + out_path.string());
        out = &file;
    }
    *out << "instance_index,label,kdn_value\n";
    for (std::size_t i = 0; i < h.size(); ++i)
        *out << i << ',' << d.label(i) << ',' << fmt::format("{}", h.value(i)) << '\n';
    return 0;
}

// CSV with a header and columns dataset,accuracy (extra columns ignored).
std::map<std::string, double> read_accuracy_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    std::map<std::string, double> out;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (header) {
            header = false;
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw ParseError(path.string() + ": expected dataset,accuracy");
        const auto name = line.substr(0, comma);
        const auto rest = line.substr(comma + 1);
        std::size_t used = 0;
        double value = 0.0;
        try {
            value = std::stod(rest, &used);
        } catch (const std::exception&) {
            throw ParseError(path.string() + ": bad accuracy for " + name);
        }
        out[name] = value;
    }
    return out;
}

int cmd_wilcoxon(const fs::path& a_path, const fs::path& b_path, double alpha) {
    const auto a = read_accuracy_file(a_path);
    const auto b = read_accuracy_file(b_path);
    std::vector<double> da, db;
    for (const auto& [name, value] : a) {
        const auto it = b.find(name);
        if (it == b.end()) throw ValidationError("dataset '" + name + "' missing from " + b_path.string());
        da.push_back(value);
        db.push_back(it->second);
    }
    if (a.size() != b.size()) throw ValidationError("result files list different datasets");
    if (da.empty()) throw ValidationError("no paired datasets");
    const auto r = wilcoxon_paired(da, db);
    std::cout << fmt::format("n={} n_effective={} W+={} W-={} W={}\n", da.size(), r.n_effective,
                             r.w_plus, r.w_minus, r.statistic);
    std::cout << fmt::format("p={:.6g} method={}\n", r.p_value, wilcoxon_method_name(r.method));
    std::cout << fmt::format("decision at alpha={}: {}\n", alpha,
                             r.rejects(alpha) ? "reject H0 (significant difference)"
                                              : "retain H0 (no significant difference)");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bagging-IH ensembles, baselines and label-noise experiments"};
    app.require_subcommand(1);

    fs::path config_path, out_dir;
    unsigned threads = 0;
    auto* run = app.add_subcommand("run", "Run the repeated cross-validation sweep");
    run->add_option("--config", config_path, "key = value experiment config")->required()->check(CLI::ExistingFile);
    run->add_option("--out", out_dir, "Output directory")->required();
    auto* threads_opt = run->add_option("--threads", threads, "Worker threads (0 = all cores)");

    fs::path records_path, report_dir;
    auto* report = app.add_subcommand("report", "Tables and plot data from a records CSV");
    report->add_option("--records", records_path, "records.csv from `run`")->required()->check(CLI::ExistingFile);
    report->add_option("--out", report_dir, "Output directory (default: next to the records)");

    fs::path data_path, hardness_out;
    int k = 5;
    bool raw = false;
    auto* hardness = app.add_subcommand("hardness", "Dump kDN hardness for a CSV dataset");
    hardness->add_option("--data", data_path, "Dataset CSV (last column = label)")->required()->check(CLI::ExistingFile);
    hardness->add_option("-k", k, "Neighbors")->capture_default_str();
    hardness->add_flag("--raw", raw, "Skip min-max scaling");
    hardness->add_option("--out", hardness_out, "Output CSV (default: stdout)");

    fs::path a_path, b_path;
    double alpha = 0.05;
    auto* wilcoxon = app.add_subcommand("wilcoxon", "Paired Wilcoxon signed-rank test on two result files");
    wilcoxon->add_option("a", a_path, "dataset,accuracy CSV for method A")->required()->check(CLI::ExistingFile);
    wilcoxon->add_option("b", b_path, "dataset,accuracy CSV for method B")->required()->check(CLI::ExistingFile);
    wilcoxon->add_option("--alpha", alpha, "Significance level")->capture_default_str();

    int classes = 3;
    std::size_t per_class = 200, features = 3;
    double spread = 0.15;
    std::uint64_t seed = 1;
    fs::path synth_out;
    auto* synth = app.add_subcommand("synth", "Write a Gaussian blob dataset as CSV");
    synth->add_option("--classes", classes)->capture_default_str();
    synth->add_option("--per-class", per_class)->capture_default_str();
    synth->add_option("--features", features)->capture_default_str();
    synth->add_option("--spread", spread)->capture_default_str();
    synth->add_option("--seed", seed)->capture_default_str();
    synth->add_option("--out", synth_out, "Output CSV")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) return cmd_run(config_path, out_dir,
                                 *threads_opt ? std::optional<unsigned>(threads) : std::nullopt);
        if (*report) return cmd_report(records_path, report_dir);
        if (*hardness) return cmd_hardness(data_path, k, raw, hardness_out);
        if (*wilcoxon) return cmd_wilcoxon(a_path, b_path, alpha);
        if (*synth) {
            write_csv(synth_blobs(classes, per_class, features, spread, seed), synth_out);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
