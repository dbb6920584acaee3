#include <fstream>
#include <istream>
#include <ostream>
#include <thread>

#include <fmt/format.h>

#include "ihbag/error.hpp"
#include "ihbag/experiments.hpp"
#include "text.hpp"

namespace ihbag {

std::string_view method_name(Method m) {
    switch (m) {
    case Method::bagging_ih: return "bagging-ih";
    case Method::bagging: return "bagging";
    case Method::random_subspace: return "random-subspace";
    case Method::perceptron_ova: return "perceptron-ova";
    }
    return "unknown";
}

std::string_view method_label(Method m) {
    switch (m) {
    case Method::bagging_ih: return "Bagging-IH";
    case Method::bagging: return "Bagging";
    case Method::random_subspace: return "Rand. Subsp.";
    case Method::perceptron_ova: return "Perceptron OvA";
    }
    return "unknown";
}

Method parse_method(std::string_view name) {
    for (Method m : all_methods) {
        if (method_name(m) == name) return m;
    }
    throw ParseError(fmt::format("unknown method '{}'", name));
}

void ExperimentConfig::validate() const {
    if (methods.empty()) throw ValidationError("config: no methods");
    if (noise_levels.empty()) throw ValidationError("config: no noise levels");
    for (double r : noise_levels) {
        if (!(r >= 0.0 && r <= 1.0))
            throw ValidationError(fmt::format("config: noise level {} outside [0, 1]", r));
    }
    if (repetitions < 1) throw ValidationError("config: repetitions must be >= 1");
    if (folds < 2) throw ValidationError("config: folds must be >= 2");
    if (pool_size < 1) throw ValidationError("config: pool_size must be >= 1");
    if (k < 1) throw ValidationError("config: k must be >= 1");
    if (!(feature_fraction > 0.0 && feature_fraction <= 1.0))
        throw ValidationError("config: feature_fraction must be in (0, 1]");
    classifier.validate();
}

namespace {

template <typename Int>
Int int_value(std::string_view key, std::string_view value) {
    Int out{};
    if (!text::parse_int(value, out))
        throw ParseError(fmt::format("config: '{}' expects an integer, got '{}'", key, value));
    return out;
}

double real_value(std::string_view key, std::string_view value) {
    double out{};
    if (!text::parse_double(value, out))
        throw ParseError(fmt::format("config: '{}' expects a number, got '{}'", key, value));
    return out;
}

} // namespace

ExperimentConfig parse_config(std::istream& in) {
    ExperimentConfig cfg;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = line;
        if (const auto hash = view.find('#'); hash != std::string_view::npos)
            view = view.substr(0, hash);
        view = text::trim(view);
        if (view.empty()) continue;
        const auto eq = view.find('=');
        if (eq == std::string_view::npos)
            throw ParseError(fmt::format("config line {}: expected key = value", line_no));
        const auto key = text::trim(view.substr(0, eq));
        const auto value = text::trim(view.substr(eq + 1));

        if (key == "dataset") {
            cfg.datasets.emplace_back(value);
        } else if (key == "datasets") {
            for (auto item : text::split(value, ';'))
                if (!item.empty()) cfg.datasets.emplace_back(item);
        } else if (key == "methods") {
            cfg.methods.clear();
            for (auto item : text::split(value, ',')) cfg.methods.push_back(parse_method(item));
        } else if (key == "noise_levels") {
            cfg.noise_levels.clear();
            for (auto item : text::split(value, ','))
                cfg.noise_levels.push_back(real_value(key, item));
        } else if (key == "repetitions") {
            cfg.repetitions = int_value<int>(key, value);
        } else if (key == "folds") {
            cfg.folds = int_value<int>(key, value);
        } else if (key == "pool_size") {
            cfg.pool_size = int_value<std::size_t>(key, value);
        } else if (key == "bootstrap_size") {
            cfg.bootstrap_size = value == "full" ? 0 : int_value<std::size_t>(key, value);
        } else if (key == "k") {
            cfg.k = int_value<int>(key, value);
        } else if (key == "feature_fraction") {
            cfg.feature_fraction = real_value(key, value);
        } else if (key == "epochs") {
            cfg.classifier.epochs = int_value<int>(key, value);
        } else if (key == "learning_rate") {
            cfg.classifier.learning_rate = real_value(key, value);
        } else if (key == "master_seed") {
            cfg.master_seed = int_value<Seed>(key, value);
        } else if (key == "threads") {
            cfg.threads = int_value<unsigned>(key, value);
        } else {
            throw ParseError(fmt::format("config line {}: unknown key '{}'", line_no, key));
        }
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open config " + path.string());
    return parse_config(in);
}

void write_config(const ExperimentConfig& cfg, std::ostream& out) {
    for (const auto& d : cfg.datasets) out << "dataset = " << d << '\n';
    out << "methods = ";
    for (std::size_t i = 0; i < cfg.methods.size(); ++i)
        out << (i ? "," : "") << method_name(cfg.methods[i]);
    out << "\nnoise_levels = ";
    for (std::size_t i = 0; i < cfg.noise_levels.size(); ++i)
        out << (i ? "," : "") << text::shortest(cfg.noise_levels[i]);
    out << "\nrepetitions = " << cfg.repetitions << "\nfolds = " << cfg.folds
        << "\npool_size = " << cfg.pool_size << "\nbootstrap_size = ";
    if (cfg.bootstrap_size == 0)
        out << "full";
    else
        out << cfg.bootstrap_size;
    out << "\nk = " << cfg.k << "\nfeature_fraction = " << text::shortest(cfg.feature_fraction)
        << "\nepochs = " << cfg.classifier.epochs
        << "\nlearning_rate = " << text::shortest(cfg.classifier.learning_rate)
        << "\nmaster_seed = " << cfg.master_seed << "\nthreads = " << cfg.threads << '\n';
}

Dataset load_dataset_source(std::string_view source, const std::filesystem::path& base_dir) {
    constexpr std::string_view blobs = "synth:blobs";
    if (source.substr(0, blobs.size()) == blobs) {
        int classes = 3;
        std::size_t per_class = 100;
        std::size_t features = 3;
        double spread = 0.15;
        Seed seed = 1;
        std::string name;
        auto params = source.substr(blobs.size());
        if (!params.empty() && params.front() == ':') params.remove_prefix(1);
        for (auto item : text::split(params, ',')) {
            if (item.empty()) continue;
            const auto eq = item.find('=');
            if (eq == std::string_view::npos)
                throw ParseError(fmt::format("dataset '{}': expected key=value, got '{}'", source, item));
            const auto key = text::trim(item.substr(0, eq));
            const auto value = text::trim(item.substr(eq + 1));
            if (key == "classes") classes = int_value<int>(key, value);
            else if (key == "per_class") per_class = int_value<std::size_t>(key, value);
            else if (key == "features") features = int_value<std::size_t>(key, value);
            else if (key == "spread") spread = real_value(key, value);
            else if (key == "seed") seed = int_value<Seed>(key, value);
            else if (key == "name") name = std::string(value);
            else throw ParseError(fmt::format("dataset '{}': unknown key '{}'", source, key));
        }
        auto d = synth_blobs(classes, per_class, features, spread, seed);
        return name.empty() ? d : d.with_name(std::move(name));
    }
    std::filesystem::path path{std::string(source)};
    if (path.is_relative() && !base_dir.empty()) path = base_dir / path;
    return load_csv(path);
}

} // namespace ihbag
