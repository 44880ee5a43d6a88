// tetra: resize, score and benchmark grayscale images with the tetragon-family schemes.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tetra/bench.hpp"
#include "tetra/error.hpp"
#include "tetra/image.hpp"
#include "tetra/metrics.hpp"
#include "tetra/report.hpp"
#include "tetra/resize.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitData = 3;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> items;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) items.push_back(item);
    }
    return items;
}

tetra::Algorithm algorithm_arg(const std::string& tag) {
    const auto a = tetra::parse_algorithm(tag);
    if (!a) throw UsageError("unknown scheme '" + tag + "' (expected TN, TB, TC, MD, HR, AT or AC)");
    return *a;
}

tetra::IntensityDomain domain_arg(const std::string& name) {
    const auto d = tetra::parse_intensity_domain(name);
    if (!d) throw UsageError("unknown intensity domain '" + name + "' (expected raw or unit)");
    return *d;
}

int threads_from_env() {
    const char* env = std::getenv("TETRA_THREADS");
    if (!env || !*env) return 0;
    try {
        std::size_t used = 0;
        const int n = std::stoi(env, &used);
        if (used != std::string(env).size() || n < 1) throw std::invalid_argument(env);
        return n;
    } catch (const std::logic_error&) {
        throw UsageError(std::string("TETRA_THREADS must be a positive integer, got '") + env + "'");
    }
}

std::string g6(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%#.6g", v);
    return buf;
}

void print_aggregates(const std::vector<tetra::AggregateRow>& rows) {
    std::printf("%-4s %5s %12s %10s %9s %12s %6s\n", "alg", "ratio", "mean_mse", "mean_psnr", "mean_ssim",
                "mean_time_s", "images");
    for (const auto& r : rows) {
        std::printf("%-4s %5d %12s %10s %9s %12s %6d\n", std::string(tetra::to_string(r.algorithm)).c_str(), r.ratio,
                    g6(r.mean_mse).c_str(), g6(r.mean_psnr).c_str(), g6(r.mean_ssim).c_str(),
                    g6(r.mean_elapsed_s).c_str(), r.image_count);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Grayscale image resampling with normalized geometric weighting schemes"};
    app.require_subcommand(1);

    std::string resize_in, resize_out, resize_scheme = "TB", resize_domain = "raw";
    double resize_ratio = 2.0;
    auto* resize_cmd = app.add_subcommand("resize", "Resize one image");
    resize_cmd->add_option("input", resize_in, "Input image (PGM or PNG)")->required();
    resize_cmd->add_option("output", resize_out, "Output PGM")->required();
    resize_cmd->add_option("--ratio", resize_ratio, "Scaling ratio (> 0)")->required();
    resize_cmd->add_option("--scheme", resize_scheme, "TN, TB, TC, MD, HR, AT or AC")->capture_default_str();
    resize_cmd->add_option("--intensity-domain", resize_domain, "raw or unit (AT/AC only)")->capture_default_str();

    std::string metrics_a, metrics_b;
    auto* metrics_cmd = app.add_subcommand("metrics", "Compare two images (MSE, PSNR, SSIM)");
    metrics_cmd->add_option("a", metrics_a, "Reference image")->required();
    metrics_cmd->add_option("b", metrics_b, "Test image")->required();

    std::string bench_corpus, bench_ratios = "2,4", bench_algorithms = "TN,TB,TC,MD,HR,AT,AC";
    std::string bench_domain = "raw", bench_downsampler = "box", bench_out = "bench_out";
    int bench_reps = 3;
    bool bench_save = false;
    auto* bench_cmd = app.add_subcommand("bench", "Run the upscaling benchmark over a corpus");
    bench_cmd->add_option("--corpus", bench_corpus, "Directory of reference images")->required();
    bench_cmd->add_option("--ratios", bench_ratios, "Comma-separated integer ratios")->capture_default_str();
    bench_cmd->add_option("--algorithms", bench_algorithms, "Comma-separated scheme tags")->capture_default_str();
    bench_cmd->add_option("--intensity-domain", bench_domain, "raw or unit")->capture_default_str();
    bench_cmd->add_option("--downsampler", bench_downsampler, "box, decimate or precomputed")->capture_default_str();
    bench_cmd->add_option("--reps", bench_reps, "Timed repetitions per resize")->capture_default_str();
    bench_cmd->add_option("--out", bench_out, "Output directory")->capture_default_str();
    bench_cmd->add_flag("--save-images", bench_save, "Also write every interpolated image");

    std::string report_csv, report_out = "report";
    auto* report_cmd = app.add_subcommand("report", "Render charts and a summary from an aggregates CSV");
    report_cmd->add_option("--aggregates", report_csv, "aggregates.csv from a bench run")->required();
    report_cmd->add_option("--out", report_out, "Output directory")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*resize_cmd) {
            const tetra::Scheme scheme{algorithm_arg(resize_scheme), domain_arg(resize_domain)};
            const tetra::GrayImage input = tetra::load_image(resize_in);
            tetra::save_pgm(tetra::resize(input, resize_ratio, scheme), resize_out);
        } else if (*metrics_cmd) {
            const tetra::GrayImage a = tetra::load_image(metrics_a);
            const tetra::GrayImage b = tetra::load_image(metrics_b);
            const tetra::QualityScores q = tetra::score(a, b);
            std::printf("mse=%s\npsnr=%s\nssim=%s\n", g6(q.mse).c_str(), g6(q.psnr).c_str(), g6(q.ssim).c_str());
        } else if (*bench_cmd) {
            tetra::BenchConfig config;
            config.corpus_dir = bench_corpus;
            config.ratios.clear();
            for (const auto& r : split_list(bench_ratios)) {
                try {
                    std::size_t used = 0;
                    config.ratios.push_back(std::stoi(r, &used));
                    if (used != r.size()) throw std::invalid_argument(r);
                } catch (const std::logic_error&) {
                    throw UsageError("invalid ratio '" + r + "'");
                }
            }
            config.algorithms.clear();
            for (const auto& tag : split_list(bench_algorithms)) config.algorithms.push_back(algorithm_arg(tag));
            config.domain = domain_arg(bench_domain);
            const auto down = tetra::parse_downsampler(bench_downsampler);
            if (!down) throw UsageError("unknown downsampler '" + bench_downsampler + "'");
            config.downsampler = *down;
            config.repetitions = bench_reps;
            config.threads = threads_from_env();
            if (bench_save) config.image_dir = std::filesystem::path(bench_out) / "images";
            try {
                tetra::validate(config);
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            const tetra::BenchResult result = tetra::run_benchmark(config);
            tetra::write_report_bundle(bench_out, config, result);
            print_aggregates(result.aggregates);
        } else if (*report_cmd) {
            const auto rows = tetra::read_aggregates_csv(report_csv);
            tetra::write_figures(report_out, rows);
            std::cout << tetra::summary_markdown(rows);
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const tetra::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const tetra::DataError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    }
    return kExitOk;
}
