#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tetra/image.hpp"
#include "tetra/metrics.hpp"
#include "tetra/resize.hpp"

namespace tetra {

/// How the low-resolution inputs are obtained from the references.
enum class Downsampler {
    box,          ///< mean of each factor x factor block, rounded
    decimate,     ///< top-left sample of each block
    precomputed,  ///< read from <corpus>/x<ratio>/<same file name>
};

std::string_view to_string(Downsampler d) noexcept;
std::optional<Downsampler> parse_downsampler(std::string_view name) noexcept;

struct BenchConfig {
    std::filesystem::path corpus_dir;
    std::vector<int> ratios{2, 4};
    std::vector<Algorithm> algorithms{kAllAlgorithms.begin(), kAllAlgorithms.end()};
    IntensityDomain domain = IntensityDomain::raw;
    Downsampler downsampler = Downsampler::box;
    int repetitions = 3;
    /// Interpolated outputs are written here as PGM when non-empty.
    std::filesystem::path image_dir;
    /// Scoring workers; 0 means std::thread::hardware_concurrency().
    int threads = 0;
};

/// Throws std::invalid_argument on ratios < 2, repetitions < 1, empty or duplicate lists.
void validate(const BenchConfig& config);

/// One (image, algorithm, ratio) measurement.
struct BenchRecord {
    std::string image_id;
    Algorithm algorithm = Algorithm::TB;
    int ratio = 2;
    double mse = 0.0;
    double psnr = 0.0;
    double ssim = 0.0;
    double elapsed_s = 0.0;  ///< median of the timed repetitions
};

struct AggregateRow {
    Algorithm algorithm = Algorithm::TB;
    int ratio = 2;
    double mean_mse = 0.0;
    double mean_psnr = 0.0;
    double mean_ssim = 0.0;
    double mean_elapsed_s = 0.0;
    int image_count = 0;
};

struct BenchResult {
    std::vector<BenchRecord> records;
    std::vector<AggregateRow> aggregates;
};

/// Throws DataError when a dimension is not divisible by `factor`, and
/// std::invalid_argument for factor < 2 or the precomputed method.
GrayImage downsample(const GrayImage& image, int factor, Downsampler method);

/// Median of a non-empty sample (mean of the middle pair for even sizes).
double median(std::vector<double> values);

/// One untimed warm-up, then `repetitions` timed single-threaded resizes.
/// Returns the median wall-clock seconds.
double time_algorithm(const GrayImage& image, double ratio, const Scheme& scheme, int repetitions);

/// Reference image files (.pgm/.png) directly inside `dir`, sorted by name.
/// Throws IoError if the directory cannot be read.
std::vector<std::filesystem::path> list_corpus(const std::filesystem::path& dir);

/// Per-(ratio, algorithm) means, ordered by ratio then algorithm as first seen in `records`.
std::vector<AggregateRow> aggregate(std::span<const BenchRecord> records);

/// Runs the whole protocol. Throws IoError/DataError for corpus problems,
/// std::invalid_argument for a bad config.
BenchResult run_benchmark(const BenchConfig& config);

}  // namespace tetra
