#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tetra/bench.hpp"

namespace tetra {

inline constexpr std::string_view kRecordsHeader = "image_id,algorithm,ratio,mse,psnr,ssim,elapsed_s";
inline constexpr std::string_view kAggregatesHeader =
    "algorithm,ratio,mean_mse,mean_psnr,mean_ssim,mean_elapsed_s,image_count";

/// Shortest round-trip decimal, locale independent; infinities as "inf"/"-inf".
std::string format_number(double value);
/// Inverse of format_number. Throws DataError on anything else.
double parse_number(std::string_view text);

std::string records_csv(std::span<const BenchRecord> records);
std::string aggregates_csv(std::span<const AggregateRow> rows);
/// Parses the aggregates schema; throws DataError on a bad header, field count or value.
std::vector<AggregateRow> parse_aggregates_csv(std::string_view text);
std::vector<AggregateRow> read_aggregates_csv(const std::filesystem::path& path);

enum class Metric { time, mse, psnr, ssim };

inline constexpr Metric kAllMetrics[] = {Metric::time, Metric::mse, Metric::ssim, Metric::psnr};

std::string_view metric_name(Metric metric) noexcept;  ///< "time", "mse", ...
double metric_value(const AggregateRow& row, Metric metric) noexcept;
/// Lower is better for time and MSE.
bool lower_is_better(Metric metric) noexcept;

/// Algorithm with the best mean `metric` at `ratio`; ties keep the first row.
std::optional<Algorithm> best_algorithm(std::span<const AggregateRow> rows, int ratio, Metric metric);

/// Grouped bar chart: one group per ratio, one bar per algorithm. Static SVG, no script.
std::string render_bar_chart(std::span<const AggregateRow> rows, Metric metric);

/// Markdown with the best algorithm per metric and ratio, plus the reference ordering checks.
std::string summary_markdown(std::span<const AggregateRow> rows);

/// JSON document with the config and the aggregate rows.
std::string summary_json(const BenchConfig& config, std::span<const AggregateRow> rows);

/// Writes text to `path`, throwing IoError on failure.
void write_text(const std::filesystem::path& path, std::string_view text);

/// fig_<metric>.svg for every metric plus summary.md.
void write_figures(const std::filesystem::path& out_dir, std::span<const AggregateRow> rows);

/// records.csv, aggregates.csv, summary.json and the figures.
void write_report_bundle(const std::filesystem::path& out_dir, const BenchConfig& config, const BenchResult& result);

}  // namespace tetra
