#include <cmath>
#include <limits>
#include <random>
#include <regex>
#include <string>

#include "doctest.h"
#include "tetra/error.hpp"
#include "tetra/report.hpp"
#include "test_support.hpp"

using namespace tetra;
using tetra::testing::TempDir;

namespace {

std::vector<AggregateRow> sample_rows() {
    std::mt19937 rng(1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<AggregateRow> rows;
    for (int ratio : {2, 4}) {
        for (Algorithm a : kAllAlgorithms) {
            rows.push_back({a, ratio, 100 * u(rng), 20 + 10 * u(rng), u(rng), 1e-3 * u(rng), 5});
        }
    }
    return rows;
}

std::size_t count(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (std::size_t pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
    return n;
}

}  // namespace

TEST_CASE("number formatting round trips and is locale independent") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int i = 0; i < 1000; ++i) {
        const double v = u(rng) * std::pow(10.0, static_cast<int>(rng() % 20) - 10);
        const std::string s = format_number(v);
        CHECK(s.find(',') == std::string::npos);
        CHECK(parse_number(s) == v);
    }
    CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(std::isinf(parse_number("inf")));
    CHECK(format_number(0.5) == "0.5");
    CHECK(format_number(65025) == "65025");
    CHECK_THROWS_AS(parse_number("1,5"), DataError);
    CHECK_THROWS_AS(parse_number(""), DataError);
    CHECK_THROWS_AS(parse_number("abc"), DataError);
}

TEST_CASE("records CSV schema") {
    const std::vector<BenchRecord> recs = {
        {"lena", Algorithm::AC, 4, 12.5, 37.2, 0.91, 0.002},
        {"lena", Algorithm::TN, 2, 0, std::numeric_limits<double>::infinity(), 1, 1e-4},
    };
    const std::string csv = records_csv(recs);
    CHECK(csv ==
          "image_id,algorithm,ratio,mse,psnr,ssim,elapsed_s\n"
          "lena,AC,4,12.5,37.2,0.91,0.002\n"
          "lena,TN,2,0,inf,1,1e-04\n");
}

TEST_CASE("aggregates CSV round trip") {
    const auto rows = sample_rows();
    const std::string csv = aggregates_csv(rows);
    CHECK(csv.substr(0, csv.find('\n')) == "algorithm,ratio,mean_mse,mean_psnr,mean_ssim,mean_elapsed_s,image_count");
    const auto back = parse_aggregates_csv(csv);
    REQUIRE(back.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(back[i].algorithm == rows[i].algorithm);
        CHECK(back[i].ratio == rows[i].ratio);
        CHECK(back[i].mean_mse == rows[i].mean_mse);
        CHECK(back[i].mean_psnr == rows[i].mean_psnr);
        CHECK(back[i].mean_ssim == rows[i].mean_ssim);
        CHECK(back[i].mean_elapsed_s == rows[i].mean_elapsed_s);
        CHECK(back[i].image_count == rows[i].image_count);
    }
    // CRLF line endings are tolerated.
    CHECK(parse_aggregates_csv(std::regex_replace(csv, std::regex("\n"), "\r\n")).size() == rows.size());
}

TEST_CASE("malformed aggregates are rejected") {
    const std::string header = "algorithm,ratio,mean_mse,mean_psnr,mean_ssim,mean_elapsed_s,image_count\n";
    CHECK_THROWS_AS(parse_aggregates_csv(""), DataError);
    CHECK_THROWS_AS(parse_aggregates_csv(header), DataError);
    CHECK_THROWS_AS(parse_aggregates_csv("algo,ratio\nTB,2\n"), DataError);
    CHECK_THROWS_AS(parse_aggregates_csv(header + "TB,2,1,2,3\n"), DataError);
    CHECK_THROWS_AS(parse_aggregates_csv(header + "XX,2,1,2,0.5,0.1,3\n"), DataError);
    CHECK_THROWS_AS(parse_aggregates_csv(header + "TB,two,1,2,0.5,0.1,3\n"), DataError);
    CHECK_THROWS_AS(parse_aggregates_csv(header + "TB,2,1,2,0.5,0.1,0\n"), DataError);
    CHECK_THROWS_AS(read_aggregates_csv("/nonexistent/aggregates.csv"), IoError);
}

TEST_CASE("bar charts have one bar per aggregate row") {
    const auto rows = sample_rows();
    for (Metric m : kAllMetrics) {
        const std::string svg = render_bar_chart(rows, m);
        CHECK(svg.rfind("<svg", 0) == 0);
        CHECK(count(svg, "class=\"bar\"") == 14);
        CHECK(svg.find("<script") == std::string::npos);
        CHECK(count(svg, "ratio = ") == 2);
    }
    const std::vector<AggregateRow> single = {{Algorithm::TB, 2, 1, std::numeric_limits<double>::infinity(), 1, 0.1, 1}};
    CHECK(count(render_bar_chart(single, Metric::psnr), "class=\"bar\"") == 1);
    CHECK(count(render_bar_chart(single, Metric::mse), "class=\"bar\"") == 1);
}

TEST_CASE("summary names the argmax found by an independent scan") {
    const auto rows = sample_rows();
    const std::string md = summary_markdown(rows);
    for (int ratio : {2, 4}) {
        const AggregateRow* best = nullptr;
        for (const auto& r : rows) {
            if (r.ratio == ratio && (!best || r.mean_ssim > best->mean_ssim)) best = &r;
        }
        REQUIRE(best);
        CHECK(best_algorithm(rows, ratio, Metric::ssim) == best->algorithm);
        const std::regex line("\\| " + std::to_string(ratio) + " \\| (\\w\\w) \\| (\\w\\w) \\| (\\w\\w) \\| (\\w\\w) \\|");
        std::smatch m;
        REQUIRE(std::regex_search(md, m, line));
        CHECK(m[4].str() == std::string(to_string(best->algorithm)));
    }
    CHECK(md.find("## Ordering checks") != std::string::npos);
}

TEST_CASE("best_algorithm direction per metric") {
    const std::vector<AggregateRow> rows = {
        {Algorithm::TN, 4, 50, 20, 0.5, 0.001, 1},
        {Algorithm::TC, 4, 10, 30, 0.9, 0.010, 1},
        {Algorithm::TB, 4, 20, 25, 0.8, 0.005, 1},
    };
    CHECK(best_algorithm(rows, 4, Metric::time) == Algorithm::TN);
    CHECK(best_algorithm(rows, 4, Metric::mse) == Algorithm::TC);
    CHECK(best_algorithm(rows, 4, Metric::psnr) == Algorithm::TC);
    CHECK(best_algorithm(rows, 4, Metric::ssim) == Algorithm::TC);
    CHECK_FALSE(best_algorithm(rows, 2, Metric::ssim));
    const std::string md = summary_markdown(rows);
    // MD/HR/AT/AC are absent, so the TB comparisons cannot be evaluated.
    CHECK(md.find("| 4 | yes | yes | yes | yes | n/a | n/a |") != std::string::npos);
}

TEST_CASE("bundle writes every file") {
    TempDir out("report");
    BenchResult result;
    result.records = {{"a", Algorithm::TB, 2, 1, 48, 0.9, 0.01}};
    result.aggregates = aggregate(result.records);
    BenchConfig config;
    config.corpus_dir = "corpus";
    write_report_bundle(out.path(), config, result);
    for (const char* f : {"records.csv", "aggregates.csv", "summary.json", "summary.md", "fig_time.svg", "fig_mse.svg",
                          "fig_ssim.svg", "fig_psnr.svg"}) {
        CHECK(std::filesystem::exists(out / f));
    }
    CHECK(read_aggregates_csv(out / "aggregates.csv").size() == 1);
    const std::string json = summary_json(config, result.aggregates);
    CHECK(json.find("\"intensity_domain\": \"raw\"") != std::string::npos);
    CHECK(json.find("\"ssim\": \"TB\"") != std::string::npos);
}
