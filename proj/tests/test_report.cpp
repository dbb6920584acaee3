#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ihbag/report.hpp"

using namespace ihbag;

namespace {

std::vector<ExperimentRecord> fake_records() {
    std::vector<ExperimentRecord> recs;
    const std::vector<std::string> datasets{"alpha", "beta", "gamma"};
    for (std::size_t d = 0; d < datasets.size(); ++d)
        for (int r = 0; r < 2; ++r)
            for (int f = 0; f < 2; ++f) {
                const double base = 0.7 + 0.05 * static_cast<double>(d) + 0.01 * r;
                recs.push_back({datasets[d], Method::bagging_ih, 0.2, r, f, base + 0.02, 0.1 + 0.01 * f, 0});
                recs.push_back({datasets[d], Method::bagging, 0.2, r, f, base, 0.2, 0});
            }
    return recs;
}

} // namespace

TEST_CASE("accuracy table layout") {
    const auto table = accuracy_table(aggregate(fake_records()), 0.2);
    std::istringstream in(table);
    std::vector<std::string> lines;
    for (std::string l; std::getline(in, l);) lines.push_back(l);
    REQUIRE(lines.size() == 9);
    CHECK(lines[0] == "### Noise level 20%");
    CHECK(lines[2] == "| Dataset | Bagging-IH | Bagging |");
    CHECK(lines[3] == "|---|---|---|");
    CHECK(lines[4] == "| alpha | **72.50 ± 0.71** | 70.50 ± 0.71 |");
    CHECK(lines[7] == "| **Mean** | **77.50** | 75.50 |");
    // Three datasets all favoring Bagging-IH: exact two-tailed p = 2/8.
    CHECK(lines[8] == "| **p-value** | - | 0.2500 |");
    CHECK(accuracy_table(aggregate(fake_records()), 0.4).empty());
}

TEST_CASE("freq_noisy boxplot summarizes fold values per dataset") {
    const auto rows = freq_noisy_boxplot(fake_records(), 0.2);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].dataset == "alpha");
    CHECK(rows[0].min == doctest::Approx(0.1));
    CHECK(rows[0].max == doctest::Approx(0.11));
    CHECK(rows[0].median == doctest::Approx(0.105));
    CHECK(rows[0].reference == 0.2);
    const auto csv = boxplot_csv(rows);
    CHECK(csv.rfind("dataset,min,q1,median,q3,max,reference\nalpha,0.1,", 0) == 0);
}

TEST_CASE("accuracy versus noise averages dataset means") {
    const auto csv = accuracy_vs_noise_csv(aggregate(fake_records()));
    std::istringstream in(csv);
    std::string header, first, second;
    std::getline(in, header);
    std::getline(in, first);
    std::getline(in, second);
    CHECK(header == "noise,method,mean_accuracy");
    CHECK(first.rfind("0.2,bagging-ih,", 0) == 0);
    CHECK(std::stod(first.substr(first.rfind(',') + 1)) == doctest::Approx(0.775).epsilon(1e-12));
    CHECK(second.rfind("0.2,bagging,", 0) == 0);
    CHECK(std::stod(second.substr(second.rfind(',') + 1)) == doctest::Approx(0.755).epsilon(1e-12));
}

TEST_CASE("write_report produces its files") {
    const auto dir = std::filesystem::temp_directory_path() / "ihbag_report_test";
    std::filesystem::remove_all(dir);
    const auto md = write_report(fake_records(), dir);
    CHECK(md.find("### Noise level 20%") != std::string::npos);
    CHECK(std::filesystem::exists(dir / "report.md"));
    CHECK(std::filesystem::exists(dir / "accuracy_vs_noise.csv"));
    CHECK(std::filesystem::exists(dir / "freq_noisy_boxplot_0.2.csv"));
    std::filesystem::remove_all(dir);
}
