#include "ihbag/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <unordered_map>

#include <fmt/format.h>

#include "ihbag/error.hpp"
#include "text.hpp"

namespace ihbag {

Dataset::Dataset(std::string name, Matrix features, std::vector<int> labels, int class_count,
                 std::vector<std::string> class_names)
    : name_(std::move(name)),
      features_(std::move(features)),
      labels_(std::move(labels)),
      class_count_(class_count),
      class_names_(std::move(class_names)) {
    if (features_.rows() == 0) throw ValidationError("dataset '" + name_ + "': no instances");
    if (features_.cols() == 0) throw ValidationError("dataset '" + name_ + "': no features");
    if (labels_.size() != features_.rows())
        throw DimensionError(fmt::format("dataset '{}': {} labels for {} rows", name_,
                                         labels_.size(), features_.rows()));
    if (class_count_ < 2)
        throw ValidationError(fmt::format("dataset '{}': need at least 2 classes, got {}", name_,
                                          class_count_));
    if (!class_names_.empty() && class_names_.size() != static_cast<std::size_t>(class_count_))
        throw DimensionError("dataset '" + name_ + "': class name count mismatch");
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (labels_[i] < 0 || labels_[i] >= class_count_)
            throw ValidationError(
                fmt::format("dataset '{}': label {} at row {} out of range", name_, labels_[i], i));
    }
    for (double v : features_.data()) {
        if (!std::isfinite(v)) throw ValidationError("dataset '" + name_ + "': non-finite feature");
    }
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
    Matrix x(indices.size(), feature_count());
    std::vector<int> y(indices.size());
    for (std::size_t r = 0; r < indices.size(); ++r) {
        const auto src = row(indices[r]);
        std::copy(src.begin(), src.end(), x.row(r).begin());
        y[r] = labels_[indices[r]];
    }
    return Dataset(name_, std::move(x), std::move(y), class_count_, class_names_);
}

Dataset Dataset::with_labels(std::vector<int> labels) const {
    return Dataset(name_, features_, std::move(labels), class_count_, class_names_);
}

Dataset Dataset::with_name(std::string name) const {
    return Dataset(std::move(name), features_, labels_, class_count_, class_names_);
}

namespace {

using text::trim;

std::vector<std::string_view> split_fields(std::string_view line) { return text::split(line, ','); }

bool parse_number(std::string_view cell, double& value) {
    if (cell.empty()) return false;
    if (cell.front() == '+') cell.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    return ec == std::errc() && ptr == cell.data() + cell.size();
}

std::string unquote(std::string_view s) {
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
    return std::string(s);
}

} // namespace

Dataset parse_csv(std::istream& in, std::string name) {
    std::vector<double> values;
    std::vector<int> labels;
    std::vector<std::string> class_names;
    std::unordered_map<std::string, int> codes;
    std::size_t cols = 0;
    bool first_content_line = true;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = split_fields(line);
        if (fields.size() < 2)
            throw ParseError(fmt::format("{}: line {}: expected at least one feature and a label",
                                         name, line_no));

        if (first_content_line) {
            first_content_line = false;
            cols = fields.size() - 1;
            // A header has at least one non-numeric cell among the feature columns.
            const bool header = std::any_of(fields.begin(), fields.end() - 1, [](auto f) {
                double v;
                return !parse_number(f, v);
            });
            if (header) continue;
        }
        if (fields.size() - 1 != cols)
            throw ParseError(fmt::format("{}: line {}: expected {} columns, found {}", name, line_no,
                                         cols + 1, fields.size()));
        for (std::size_t c = 0; c < cols; ++c) {
            double v;
            if (!parse_number(fields[c], v) || !std::isfinite(v))
                throw ParseError(fmt::format("{}: line {}, column {}: invalid numeric cell '{}'",
                                             name, line_no, c + 1, fields[c]));
            values.push_back(v);
        }
        const std::string raw = unquote(fields.back());
        if (raw.empty())
            throw ParseError(fmt::format("{}: line {}: empty label", name, line_no));
        auto [it, inserted] = codes.try_emplace(raw, static_cast<int>(class_names.size()));
        if (inserted) class_names.push_back(raw);
        labels.push_back(it->second);
    }

    if (labels.empty()) throw ValidationError(name + ": no instances");
    if (class_names.size() < 2)
        throw ValidationError(fmt::format("{}: need at least 2 classes, found {}", name,
                                          class_names.size()));

    Matrix x(labels.size(), cols, std::move(values));
    const int class_count = static_cast<int>(class_names.size());
    return Dataset(std::move(name), std::move(x), std::move(labels), class_count,
                   std::move(class_names));
}

Dataset load_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    return parse_csv(in, path.stem().string());
}

void write_csv(const Dataset& d, std::ostream& out) {
    for (std::size_t c = 0; c < d.feature_count(); ++c) out << 'f' << c << ',';
    out << "label\n";
    for (std::size_t r = 0; r < d.size(); ++r) {
        for (double v : d.row(r)) out << text::shortest(v) << ',';
        if (d.class_names().empty())
            out << d.label(r);
        else
            out << d.class_names()[static_cast<std::size_t>(d.label(r))];
        out << '\n';
    }
}

void write_csv(const Dataset& d, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    write_csv(d, out);
}

std::vector<double> Scaler::transform(std::span<const double> x) const {
    if (x.size() != min.size())
        throw DimensionError(
            fmt::format("scaler fitted on {} features, got {}", min.size(), x.size()));
    std::vector<double> out(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double range = max[j] - min[j];
        out[j] = range > 0.0 ? (x[j] - min[j]) / range : 0.0;
    }
    return out;
}

Scaler fit_scaler(const Dataset& d, std::span<const std::size_t> indices) {
    if (indices.empty()) throw ValidationError("fit_scaler: empty index list");
    Scaler s;
    const auto first = d.row(indices.front());
    s.min.assign(first.begin(), first.end());
    s.max = s.min;
    for (std::size_t i : indices) {
        if (i >= d.size()) throw ValidationError("fit_scaler: index out of range");
        const auto x = d.row(i);
        for (std::size_t j = 0; j < x.size(); ++j) {
            s.min[j] = std::min(s.min[j], x[j]);
            s.max[j] = std::max(s.max[j], x[j]);
        }
    }
    return s;
}

Scaler fit_scaler(const Dataset& d) {
    IndexList all(d.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    return fit_scaler(d, all);
}

Dataset apply_scaler(const Scaler& s, const Dataset& d) {
    if (s.min.size() != d.feature_count())
        throw DimensionError(fmt::format("scaler fitted on {} features, dataset has {}",
                                         s.min.size(), d.feature_count()));
    Matrix x(d.size(), d.feature_count());
    for (std::size_t r = 0; r < d.size(); ++r) {
        const auto scaled = s.transform(d.row(r));
        std::copy(scaled.begin(), scaled.end(), x.row(r).begin());
    }
    return Dataset(d.name(), std::move(x), std::vector<int>(d.labels().begin(), d.labels().end()),
                   d.class_count(), d.class_names());
}

std::vector<FoldSplit> stratified_kfold(const Dataset& d, int k, Seed seed) {
    if (k < 2) throw ValidationError("stratified_kfold: need at least 2 folds");
    const auto folds = static_cast<std::size_t>(k);
    if (d.size() < folds)
        throw ValidationError(
            fmt::format("stratified_kfold: {} instances cannot fill {} folds", d.size(), k));

    std::vector<IndexList> by_class(static_cast<std::size_t>(d.class_count()));
    for (std::size_t i = 0; i < d.size(); ++i)
        by_class[static_cast<std::size_t>(d.label(i))].push_back(i);

    Engine eng(seed);
    std::vector<std::size_t> fold_of(d.size());
    std::size_t next = 0;
    for (auto& members : by_class) {
        shuffle(std::span(members), eng);
        for (std::size_t i : members) {
            fold_of[i] = next;
            next = (next + 1) % folds;
        }
    }

    std::vector<FoldSplit> out(folds);
    for (std::size_t f = 0; f < folds; ++f) out[f].fold_id = static_cast<int>(f);
    for (std::size_t i = 0; i < d.size(); ++i) {
        for (std::size_t f = 0; f < folds; ++f) {
            (fold_of[i] == f ? out[f].test_indices : out[f].train_indices).push_back(i);
        }
    }
    return out;
}

Dataset synth_blobs(int class_count, std::size_t per_class, std::size_t n_features, double spread,
                    Seed seed) {
    if (class_count < 2) throw ValidationError("synth_blobs: class_count must be >= 2");
    if (per_class < 1) throw ValidationError("synth_blobs: per_class must be >= 1");
    if (n_features < 1) throw ValidationError("synth_blobs: n_features must be >= 1");
    if (!(spread >= 0.0)) throw ValidationError("synth_blobs: spread must be >= 0");

    const std::size_t n = static_cast<std::size_t>(class_count) * per_class;
    Matrix x(n, n_features);
    std::vector<int> y(n);
    Engine eng(seed);
    std::size_t r = 0;
    for (int c = 0; c < class_count; ++c) {
        const auto cc = static_cast<std::size_t>(c);
        const std::size_t axis = cc % n_features;
        const double magnitude = 1.0 + static_cast<double>(cc / n_features);
        for (std::size_t i = 0; i < per_class; ++i, ++r) {
            auto row = x.row(r);
            for (std::size_t j = 0; j < n_features; ++j) {
                const double mean = j == axis ? magnitude : 0.0;
                row[j] = mean + spread * standard_normal(eng);
            }
            y[r] = c;
        }
    }
    return Dataset(fmt::format("blobs-c{}-n{}-d{}-s{}", class_count, per_class, n_features, seed),
                   std::move(x), std::move(y), class_count);
}

} // namespace ihbag
