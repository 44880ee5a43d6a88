#include "tetra/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <exception>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

#include "tetra/error.hpp"

namespace tetra {

namespace fs = std::filesystem;

std::string_view to_string(Downsampler d) noexcept {
    switch (d) {
        case Downsampler::box: return "box";
        case Downsampler::decimate: return "decimate";
        case Downsampler::precomputed: return "precomputed";
    }
    return "?";
}

std::optional<Downsampler> parse_downsampler(std::string_view name) noexcept {
    for (Downsampler d : {Downsampler::box, Downsampler::decimate, Downsampler::precomputed}) {
        if (to_string(d) == name) return d;
    }
    return std::nullopt;
}

void validate(const BenchConfig& config) {
    if (config.ratios.empty()) throw std::invalid_argument("at least one ratio is required");
    if (config.algorithms.empty()) throw std::invalid_argument("at least one algorithm is required");
    for (int r : config.ratios) {
        if (r < 2) throw std::invalid_argument("ratios must be integers >= 2, got " + std::to_string(r));
    }
    if (std::set<int>(config.ratios.begin(), config.ratios.end()).size() != config.ratios.size()) {
        throw std::invalid_argument("duplicate ratio");
    }
    if (std::set<Algorithm>(config.algorithms.begin(), config.algorithms.end()).size() != config.algorithms.size()) {
        throw std::invalid_argument("duplicate algorithm");
    }
    if (config.repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
    if (config.threads < 0) throw std::invalid_argument("threads must be >= 0");
}

GrayImage downsample(const GrayImage& image, int factor, Downsampler method) {
    if (factor < 2) throw std::invalid_argument("downsample factor must be >= 2");
    if (method == Downsampler::precomputed) {
        throw std::invalid_argument("precomputed inputs are read from disk, not downsampled");
    }
    if (image.width() % factor != 0 || image.height() % factor != 0) {
        throw DataError(std::to_string(image.width()) + "x" + std::to_string(image.height()) +
                        " is not divisible by " + std::to_string(factor));
    }
    const int w = image.width() / factor;
    const int h = image.height() / factor;
    const int area = factor * factor;
    std::vector<std::uint8_t> out(static_cast<std::size_t>(w) * h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            std::uint8_t v;
            if (method == Downsampler::decimate) {
                v = image.at(x * factor, y * factor);
            } else {
                int sum = 0;
                for (int j = 0; j < factor; ++j) {
                    for (int i = 0; i < factor; ++i) sum += image.at(x * factor + i, y * factor + j);
                }
                v = static_cast<std::uint8_t>((sum + area / 2) / area);
            }
            out[static_cast<std::size_t>(y) * w + x] = v;
        }
    }
    return GrayImage(w, h, std::move(out));
}

double median(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("median of an empty sample");
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    return values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

namespace {

using Clock = std::chrono::steady_clock;

// Smallest reportable duration; steady_clock may tick coarser than a tiny resize.
constexpr double kClockFloor = 1e-9;

struct TimedRun {
    GrayImage output;  // from the untimed warm-up
    double seconds = 0.0;
};

TimedRun timed_resize(const GrayImage& image, double ratio, const Scheme& scheme, int repetitions) {
    if (repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
    TimedRun run{resize(image, ratio, scheme), 0.0};
    std::vector<double> samples;
    samples.reserve(static_cast<std::size_t>(repetitions));
    for (int i = 0; i < repetitions; ++i) {
        const auto start = Clock::now();
        GrayImage out = resize(image, ratio, scheme);
        const auto stop = Clock::now();
        samples.push_back(std::chrono::duration<double>(stop - start).count());
        if (out != run.output) {
            throw DataError(std::string(to_string(scheme.algorithm)) + " produced non-deterministic output");
        }
    }
    run.seconds = std::max(median(std::move(samples)), kClockFloor);
    return run;
}

std::string lower_extension(const fs::path& p) {
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    return ext;
}

// Runs jobs on up to `threads` workers; rethrows the first failure.
template <class Job>
void parallel_for(std::size_t count, int threads, Job&& job) {
    const std::size_t workers = std::min<std::size_t>(count, static_cast<std::size_t>(std::max(threads, 1)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) job(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t t = 0; t < workers; ++t) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < count; i = next++) {
                    try {
                        job(i);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                    }
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);
}

}  // namespace

double time_algorithm(const GrayImage& image, double ratio, const Scheme& scheme, int repetitions) {
    return timed_resize(image, ratio, scheme, repetitions).seconds;
}

std::vector<fs::path> list_corpus(const fs::path& dir) {
    std::error_code ec;
    fs::directory_iterator it(dir, ec);
    if (ec) throw IoError("cannot read corpus directory " + dir.string() + ": " + ec.message());
    std::vector<fs::path> files;
    for (const auto& entry : it) {
        if (!entry.is_regular_file()) continue;
        const std::string ext = lower_extension(entry.path());
        if (ext == ".pgm" || (ext == ".png" && png_supported())) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    return files;
}

std::vector<AggregateRow> aggregate(std::span<const BenchRecord> records) {
    std::vector<int> ratios;
    std::vector<Algorithm> algorithms;
    for (const auto& r : records) {
        if (std::find(ratios.begin(), ratios.end(), r.ratio) == ratios.end()) ratios.push_back(r.ratio);
        if (std::find(algorithms.begin(), algorithms.end(), r.algorithm) == algorithms.end()) {
            algorithms.push_back(r.algorithm);
        }
    }
    std::vector<AggregateRow> rows;
    for (int ratio : ratios) {
        for (Algorithm a : algorithms) {
            AggregateRow row{a, ratio, 0.0, 0.0, 0.0, 0.0, 0};
            for (const auto& r : records) {
                if (r.ratio != ratio || r.algorithm != a) continue;
                row.mean_mse += r.mse;
                row.mean_psnr += r.psnr;
                row.mean_ssim += r.ssim;
                row.mean_elapsed_s += r.elapsed_s;
                ++row.image_count;
            }
            if (row.image_count == 0) continue;
            const double n = row.image_count;
            row.mean_mse /= n;
            row.mean_psnr /= n;
            row.mean_ssim /= n;
            row.mean_elapsed_s /= n;
            rows.push_back(row);
        }
    }
    return rows;
}

BenchResult run_benchmark(const BenchConfig& config) {
    validate(config);
    const std::vector<fs::path> files = list_corpus(config.corpus_dir);
    if (files.empty()) throw DataError("corpus " + config.corpus_dir.string() + " contains no images");
    if (!config.image_dir.empty()) {
        std::error_code ec;
        fs::create_directories(config.image_dir, ec);
        if (ec) throw IoError("cannot create " + config.image_dir.string() + ": " + ec.message());
    }
    const int threads =
        config.threads > 0 ? config.threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

    BenchResult result;
    for (const fs::path& file : files) {
        const std::string id = file.stem().string();
        const GrayImage reference = load_image(file);

        struct Job {
            Algorithm algorithm;
            int ratio;
            GrayImage output;
            double seconds;
        };
        std::vector<Job> jobs;

        // Timing phase: one resize at a time, nothing else running.
        for (int ratio : config.ratios) {
            const GrayImage input = config.downsampler == Downsampler::precomputed
                                        ? load_image(config.corpus_dir / ("x" + std::to_string(ratio)) / file.filename())
                                        : downsample(reference, ratio, config.downsampler);
            for (Algorithm algorithm : config.algorithms) {
                TimedRun run = timed_resize(input, ratio, Scheme{algorithm, config.domain}, config.repetitions);
                if (run.output.width() != reference.width() || run.output.height() != reference.height()) {
                    throw DataError(id + ": upscaled " + std::to_string(run.output.width()) + "x" +
                                    std::to_string(run.output.height()) + " does not match reference " +
                                    std::to_string(reference.width()) + "x" + std::to_string(reference.height()));
                }
                jobs.push_back(Job{algorithm, ratio, std::move(run.output), run.seconds});
            }
        }

        // Scoring phase: untimed, may run in parallel.
        std::vector<BenchRecord> records(jobs.size());
        parallel_for(jobs.size(), threads, [&](std::size_t i) {
            const Job& job = jobs[i];
            const QualityScores q = score(reference, job.output);
            records[i] = BenchRecord{id, job.algorithm, job.ratio, q.mse, q.psnr, q.ssim, job.seconds};
            if (!config.image_dir.empty()) {
                save_pgm(job.output, config.image_dir / (id + "_" + std::string(to_string(job.algorithm)) + "_x" +
                                                         std::to_string(job.ratio) + ".pgm"));
            }
        });
        result.records.insert(result.records.end(), records.begin(), records.end());
    }
    result.aggregates = aggregate(result.records);
    return result;
}

}  // namespace tetra
