#include "tetra/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "tetra/error.hpp"

namespace tetra {

namespace fs = std::filesystem;

std::string format_number(double value) {
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    if (std::isnan(value)) return "nan";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

double parse_number(std::string_view text) {
    if (text == "inf") return std::numeric_limits<double>::infinity();
    if (text == "-inf") return -std::numeric_limits<double>::infinity();
    if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
    double value = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size() || text.empty()) {
        throw DataError("invalid number '" + std::string(text) + "'");
    }
    return value;
}

std::string records_csv(std::span<const BenchRecord> records) {
    std::string out(kRecordsHeader);
    out += '\n';
    for (const auto& r : records) {
        out += r.image_id + ',' + std::string(to_string(r.algorithm)) + ',' + std::to_string(r.ratio) + ',' +
               format_number(r.mse) + ',' + format_number(r.psnr) + ',' + format_number(r.ssim) + ',' +
               format_number(r.elapsed_s) + '\n';
    }
    return out;
}

std::string aggregates_csv(std::span<const AggregateRow> rows) {
    std::string out(kAggregatesHeader);
    out += '\n';
    for (const auto& r : rows) {
        out += std::string(to_string(r.algorithm)) + ',' + std::to_string(r.ratio) + ',' +
               format_number(r.mean_mse) + ',' + format_number(r.mean_psnr) + ',' + format_number(r.mean_ssim) +
               ',' + format_number(r.mean_elapsed_s) + ',' + std::to_string(r.image_count) + '\n';
    }
    return out;
}

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = line.find(sep, start);
        fields.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return fields;
}

int parse_int(std::string_view text) {
    int value = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size() || text.empty()) {
        throw DataError("invalid integer '" + std::string(text) + "'");
    }
    return value;
}

std::string_view strip_cr(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

}  // namespace

std::vector<AggregateRow> parse_aggregates_csv(std::string_view text) {
    std::vector<AggregateRow> rows;
    bool header = true;
    int line_no = 0;
    for (std::string_view line : split(text, '\n')) {
        ++line_no;
        line = strip_cr(line);
        if (header) {
            if (line != kAggregatesHeader) throw DataError("unexpected aggregates header '" + std::string(line) + "'");
            header = false;
            continue;
        }
        if (line.empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != 7) {
            throw DataError("aggregates line " + std::to_string(line_no) + ": expected 7 fields, got " +
                            std::to_string(f.size()));
        }
        const auto algorithm = parse_algorithm(f[0]);
        if (!algorithm) throw DataError("aggregates line " + std::to_string(line_no) + ": unknown algorithm");
        AggregateRow row{*algorithm,         parse_int(f[1]),        parse_number(f[2]), parse_number(f[3]),
                         parse_number(f[4]), parse_number(f[5]),     parse_int(f[6])};
        if (row.ratio < 1 || row.image_count < 1) {
            throw DataError("aggregates line " + std::to_string(line_no) + ": ratio and image_count must be positive");
        }
        rows.push_back(row);
    }
    if (header) throw DataError("aggregates CSV is empty");
    if (rows.empty()) throw DataError("aggregates CSV has no rows");
    return rows;
}

std::vector<AggregateRow> read_aggregates_csv(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_aggregates_csv(ss.str());
}

std::string_view metric_name(Metric metric) noexcept {
    switch (metric) {
        case Metric::time: return "time";
        case Metric::mse: return "mse";
        case Metric::psnr: return "psnr";
        case Metric::ssim: return "ssim";
    }
    return "?";
}

double metric_value(const AggregateRow& row, Metric metric) noexcept {
    switch (metric) {
        case Metric::time: return row.mean_elapsed_s;
        case Metric::mse: return row.mean_mse;
        case Metric::psnr: return row.mean_psnr;
        case Metric::ssim: return row.mean_ssim;
    }
    return 0.0;
}

bool lower_is_better(Metric metric) noexcept { return metric == Metric::time || metric == Metric::mse; }

std::optional<Algorithm> best_algorithm(std::span<const AggregateRow> rows, int ratio, Metric metric) {
    const AggregateRow* best = nullptr;
    for (const auto& r : rows) {
        if (r.ratio != ratio) continue;
        const double v = metric_value(r, metric);
        if (!best) {
            best = &r;
            continue;
        }
        const double b = metric_value(*best, metric);
        if (lower_is_better(metric) ? v < b : v > b) best = &r;
    }
    if (!best) return std::nullopt;
    return best->algorithm;
}

namespace {

std::string_view chart_title(Metric metric) {
    switch (metric) {
        case Metric::time: return "Mean resize time (s)";
        case Metric::mse: return "Mean MSE";
        case Metric::psnr: return "Mean PSNR (dB)";
        case Metric::ssim: return "Mean SSIM";
    }
    return "";
}

std::string_view bar_color(Algorithm a) {
    switch (a) {
        case Algorithm::TN: return "#4e79a7";
        case Algorithm::TB: return "#f28e2b";
        case Algorithm::TC: return "#e15759";
        case Algorithm::MD: return "#76b7b2";
        case Algorithm::HR: return "#59a14f";
        case Algorithm::AT: return "#edc948";
        case Algorithm::AC: return "#b07aa1";
    }
    return "#999999";
}

std::string fmt(double v, int precision = 6) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::ostringstream ss;
    ss.imbue(std::locale::classic());
    ss.precision(precision);
    ss << v;
    return ss.str();
}

template <class T>
std::vector<T> distinct(std::span<const AggregateRow> rows, T AggregateRow::*field) {
    std::vector<T> out;
    for (const auto& r : rows) {
        if (std::find(out.begin(), out.end(), r.*field) == out.end()) out.push_back(r.*field);
    }
    return out;
}

}  // namespace

std::string render_bar_chart(std::span<const AggregateRow> rows, Metric metric) {
    const std::vector<int> ratios = distinct(rows, &AggregateRow::ratio);
    const std::vector<Algorithm> algorithms = distinct(rows, &AggregateRow::algorithm);

    double top = 0.0;
    for (const auto& r : rows) {
        const double v = metric_value(r, metric);
        if (std::isfinite(v)) top = std::max(top, v);
    }
    top = top > 0.0 ? top * 1.1 : 1.0;

    constexpr double width = 800, height = 440;
    constexpr double left = 70, right = 20, top_margin = 50, bottom = 80;
    const double plot_w = width - left - right;
    const double plot_h = height - top_margin - bottom;
    const double group_w = plot_w / static_cast<double>(std::max<std::size_t>(ratios.size(), 1));
    const double bar_w = group_w * 0.8 / static_cast<double>(std::max<std::size_t>(algorithms.size(), 1));

    std::ostringstream svg;
    svg.imbue(std::locale::classic());
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << width / 2 << "\" y=\"28\" text-anchor=\"middle\" font-size=\"16\">" << chart_title(metric)
        << "</text>\n";
    svg << "<line x1=\"" << left << "\" y1=\"" << top_margin << "\" x2=\"" << left << "\" y2=\""
        << top_margin + plot_h << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << left << "\" y1=\"" << top_margin + plot_h << "\" x2=\"" << left + plot_w << "\" y2=\""
        << top_margin + plot_h << "\" stroke=\"black\"/>\n";
    for (int tick = 0; tick <= 4; ++tick) {
        const double v = top * tick / 4.0;
        const double y = top_margin + plot_h - plot_h * tick / 4.0;
        svg << "<text x=\"" << left - 6 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">" << fmt(v, 4)
            << "</text>\n";
    }

    for (std::size_t g = 0; g < ratios.size(); ++g) {
        const double gx = left + group_w * static_cast<double>(g) + group_w * 0.1;
        std::size_t slot = 0;
        for (Algorithm a : algorithms) {
            const auto it = std::find_if(rows.begin(), rows.end(),
                                         [&](const AggregateRow& r) { return r.ratio == ratios[g] && r.algorithm == a; });
            if (it == rows.end()) {
                ++slot;
                continue;
            }
            const double v = metric_value(*it, metric);
            const double shown = std::isinf(v) ? top : std::clamp(std::isnan(v) ? 0.0 : v, 0.0, top);
            const double h = plot_h * shown / top;
            const double x = gx + bar_w * static_cast<double>(slot);
            const double y = top_margin + plot_h - h;
            svg << "<rect class=\"bar\" data-algorithm=\"" << to_string(a) << "\" data-ratio=\"" << ratios[g]
                << "\" x=\"" << x << "\" y=\"" << y << "\" width=\"" << bar_w * 0.9 << "\" height=\"" << h
                << "\" fill=\"" << bar_color(a) << "\"><title>" << to_string(a) << " x" << ratios[g] << ": "
                << fmt(v) << "</title></rect>\n";
            svg << "<text x=\"" << x + bar_w * 0.45 << "\" y=\"" << top_margin + plot_h + 14
                << "\" text-anchor=\"middle\" font-size=\"10\">" << to_string(a) << "</text>\n";
            ++slot;
        }
        svg << "<text x=\"" << left + group_w * (static_cast<double>(g) + 0.5) << "\" y=\""
            << top_margin + plot_h + 34 << "\" text-anchor=\"middle\">ratio = " << ratios[g] << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

namespace {

const AggregateRow* find_row(std::span<const AggregateRow> rows, int ratio, Algorithm a) {
    for (const auto& r : rows) {
        if (r.ratio == ratio && r.algorithm == a) return &r;
    }
    return nullptr;
}

// "yes"/"no", or "n/a" when a needed algorithm is missing at this ratio.
std::string beats_all(std::span<const AggregateRow> rows, int ratio, Algorithm subject,
                      std::initializer_list<Algorithm> others, Metric metric) {
    const AggregateRow* s = find_row(rows, ratio, subject);
    if (!s) return "n/a";
    for (Algorithm o : others) {
        const AggregateRow* r = find_row(rows, ratio, o);
        if (!r) return "n/a";
        const double sv = metric_value(*s, metric);
        const double ov = metric_value(*r, metric);
        if (lower_is_better(metric) ? !(sv < ov) : !(sv > ov)) return "no";
    }
    return "yes";
}

std::string is_best(std::span<const AggregateRow> rows, int ratio, Algorithm subject, Metric metric) {
    std::vector<Algorithm> others;
    for (const auto& r : rows) {
        if (r.ratio == ratio && r.algorithm != subject) others.push_back(r.algorithm);
    }
    const AggregateRow* s = find_row(rows, ratio, subject);
    if (!s || others.empty()) return "n/a";
    for (Algorithm o : others) {
        const double sv = metric_value(*s, metric);
        const double ov = metric_value(*find_row(rows, ratio, o), metric);
        if (lower_is_better(metric) ? !(sv < ov) : !(sv > ov)) return "no";
    }
    return "yes";
}

}  // namespace

std::string summary_markdown(std::span<const AggregateRow> rows) {
    const std::vector<int> ratios = distinct(rows, &AggregateRow::ratio);
    std::ostringstream md;
    md.imbue(std::locale::classic());
    md << "# Benchmark summary\n\n";
    md << "## Best algorithm per metric\n\n";
    md << "| ratio | fastest | lowest MSE | highest PSNR | highest SSIM |\n";
    md << "|---|---|---|---|---|\n";
    for (int ratio : ratios) {
        auto name = [&](Metric m) {
            const auto a = best_algorithm(rows, ratio, m);
            return a ? std::string(to_string(*a)) : std::string("n/a");
        };
        md << "| " << ratio << " | " << name(Metric::time) << " | " << name(Metric::mse) << " | "
           << name(Metric::psnr) << " | " << name(Metric::ssim) << " |\n";
    }
    md << "\n## Ordering checks\n\n";
    md << "| ratio | TC best SSIM | TC best PSNR | TC best MSE | TN fastest | TB faster than MD/HR/AT/AC "
          "| TB SSIM above MD/HR/AT/AC |\n";
    md << "|---|---|---|---|---|---|---|\n";
    const auto weighted = {Algorithm::MD, Algorithm::HR, Algorithm::AT, Algorithm::AC};
    for (int ratio : ratios) {
        md << "| " << ratio << " | " << is_best(rows, ratio, Algorithm::TC, Metric::ssim) << " | "
           << is_best(rows, ratio, Algorithm::TC, Metric::psnr) << " | "
           << is_best(rows, ratio, Algorithm::TC, Metric::mse) << " | "
           << is_best(rows, ratio, Algorithm::TN, Metric::time) << " | "
           << beats_all(rows, ratio, Algorithm::TB, weighted, Metric::time) << " | "
           << beats_all(rows, ratio, Algorithm::TB, weighted, Metric::ssim) << " |\n";
    }
    md << "\n## Means\n\n";
    md << "| algorithm | ratio | MSE | PSNR (dB) | SSIM | time (s) | images |\n";
    md << "|---|---|---|---|---|---|---|\n";
    for (const auto& r : rows) {
        md << "| " << to_string(r.algorithm) << " | " << r.ratio << " | " << fmt(r.mean_mse) << " | "
           << fmt(r.mean_psnr) << " | " << fmt(r.mean_ssim) << " | " << fmt(r.mean_elapsed_s) << " | "
           << r.image_count << " |\n";
    }
    return md.str();
}

std::string summary_json(const BenchConfig& config, std::span<const AggregateRow> rows) {
    using nlohmann::json;
    auto number = [](double v) -> json {
        if (std::isfinite(v)) return v;
        return format_number(v);
    };
    json algorithms = json::array();
    for (Algorithm a : config.algorithms) algorithms.push_back(std::string(to_string(a)));
    json doc;
    doc["config"] = {
        {"corpus_dir", config.corpus_dir.string()},
        {"ratios", config.ratios},
        {"algorithms", algorithms},
        {"intensity_domain", std::string(to_string(config.domain))},
        {"downsampler", std::string(to_string(config.downsampler))},
        {"repetitions", config.repetitions},
    };
    json aggregates = json::array();
    for (const auto& r : rows) {
        aggregates.push_back({
            {"algorithm", std::string(to_string(r.algorithm))},
            {"ratio", r.ratio},
            {"mean_mse", number(r.mean_mse)},
            {"mean_psnr", number(r.mean_psnr)},
            {"mean_ssim", number(r.mean_ssim)},
            {"mean_elapsed_s", number(r.mean_elapsed_s)},
            {"image_count", r.image_count},
        });
    }
    doc["aggregates"] = std::move(aggregates);
    json best = json::object();
    for (int ratio : distinct(rows, &AggregateRow::ratio)) {
        json per_ratio = json::object();
        for (Metric m : kAllMetrics) {
            if (auto a = best_algorithm(rows, ratio, m)) per_ratio[std::string(metric_name(m))] = std::string(to_string(*a));
        }
        best[std::to_string(ratio)] = std::move(per_ratio);
    }
    doc["best"] = std::move(best);
    return doc.dump(2) + "\n";
}

void write_text(const fs::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.flush();
    if (!out) throw IoError("write failed: " + path.string());
}

void write_figures(const fs::path& out_dir, std::span<const AggregateRow> rows) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());
    for (Metric m : kAllMetrics) {
        write_text(out_dir / ("fig_" + std::string(metric_name(m)) + ".svg"), render_bar_chart(rows, m));
    }
    write_text(out_dir / "summary.md", summary_markdown(rows));
}

void write_report_bundle(const fs::path& out_dir, const BenchConfig& config, const BenchResult& result) {
    write_figures(out_dir, result.aggregates);
    write_text(out_dir / "records.csv", records_csv(result.records));
    write_text(out_dir / "aggregates.csv", aggregates_csv(result.aggregates));
    write_text(out_dir / "summary.json", summary_json(config, result.aggregates));
}

}  // namespace tetra
