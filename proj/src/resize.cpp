#include "tetra/resize.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace tetra {

std::string_view to_string(Algorithm algorithm) noexcept {
    switch (algorithm) {
        case Algorithm::TN: return "TN";
        case Algorithm::TB: return "TB";
        case Algorithm::TC: return "TC";
        case Algorithm::MD: return "MD";
        case Algorithm::HR: return "HR";
        case Algorithm::AT: return "AT";
        case Algorithm::AC: return "AC";
    }
    return "??";
}

std::optional<Algorithm> parse_algorithm(std::string_view tag) noexcept {
    if (tag.size() != 2) return std::nullopt;
    const char upper[2] = {static_cast<char>(std::toupper(static_cast<unsigned char>(tag[0]))),
                           static_cast<char>(std::toupper(static_cast<unsigned char>(tag[1])))};
    const std::string_view key(upper, 2);
    for (Algorithm a : kAllAlgorithms) {
        if (to_string(a) == key) return a;
    }
    return std::nullopt;
}

std::string_view to_string(IntensityDomain domain) noexcept {
    return domain == IntensityDomain::unit ? "unit" : "raw";
}

std::optional<IntensityDomain> parse_intensity_domain(std::string_view name) noexcept {
    if (name == "raw") return IntensityDomain::raw;
    if (name == "unit") return IntensityDomain::unit;
    return std::nullopt;
}

int output_extent(int extent, double ratio) {
    if (!(ratio > 0.0) || !std::isfinite(ratio)) {
        throw std::invalid_argument("ratio must be a positive finite number");
    }
    const double out = std::round(extent * ratio);
    if (out < 1.0 || out > 1 << 20) {
        throw std::invalid_argument("ratio gives an output extent out of range");
    }
    return static_cast<int>(out);
}

Neighborhood gather_neighborhood(const GrayImage& image, double src_x, double src_y) noexcept {
    const double fx = std::floor(src_x);
    const double fy = std::floor(src_y);
    const int x1 = static_cast<int>(fx);
    const int y1 = static_cast<int>(fy);
    Neighborhood n;
    n.values = {get_clamped(image, x1, y1), get_clamped(image, x1 + 1, y1), get_clamped(image, x1, y1 + 1),
                get_clamped(image, x1 + 1, y1 + 1)};
    n.offset = FracOffset{src_x - fx, src_y - fy};
    return n;
}

namespace {

CornerIntensities corner_intensities(const Neighborhood& neigh, IntensityDomain domain) noexcept {
    CornerIntensities v;
    for (std::size_t i = 0; i < 4; ++i) v.v[i] = to_domain(neigh.values[i], domain);
    return v;
}

// Source-grid lookup for one destination column or row.
struct Tap {
    int lo = 0;  // clamped floor(src)
    int hi = 0;  // clamped floor(src) + 1
    double frac = 0.0;
};

std::vector<Tap> linear_taps(int dst_extent, int src_extent, double ratio) {
    std::vector<Tap> taps(static_cast<std::size_t>(dst_extent));
    for (int d = 0; d < dst_extent; ++d) {
        const double src = map_dst_to_src(d, ratio);
        const double f = std::floor(src);
        const int i = static_cast<int>(f);
        taps[d] = Tap{std::clamp(i, 0, src_extent - 1), std::clamp(i + 1, 0, src_extent - 1), src - f};
    }
    return taps;
}

// Visits every destination pixel of a weighted scheme with its unquantized value.
template <class WeightFn, class Sink>
void sweep_weighted(const GrayImage& image, double ratio, WeightFn&& weights, Sink&& sink) {
    const int out_w = output_extent(image.width(), ratio);
    const int out_h = output_extent(image.height(), ratio);
    const std::vector<Tap> cols = linear_taps(out_w, image.width(), ratio);
    const std::vector<Tap> rows = linear_taps(out_h, image.height(), ratio);
    for (int y = 0; y < out_h; ++y) {
        const Tap& ty = rows[y];
        const auto top = image.row(ty.lo);
        const auto bottom = image.row(ty.hi);
        for (int x = 0; x < out_w; ++x) {
            const Tap& tx = cols[x];
            Neighborhood n;
            n.values = {top[tx.lo], top[tx.hi], bottom[tx.lo], bottom[tx.hi]};
            n.offset = FracOffset{tx.frac, ty.frac};
            sink(x, y, blend(n, weights(n)));
        }
    }
}

template <class Sink>
void dispatch_weighted(const GrayImage& image, double ratio, const Scheme& scheme, Sink&& sink) {
    const IntensityDomain domain = scheme.domain;
    switch (scheme.algorithm) {
        case Algorithm::TB:
            sweep_weighted(image, ratio, [](const Neighborhood& n) { return tetragon_weights(n.offset); }, sink);
            return;
        case Algorithm::MD:
            sweep_weighted(image, ratio, [](const Neighborhood& n) { return md_weights(n.offset); }, sink);
            return;
        case Algorithm::HR:
            sweep_weighted(image, ratio, [](const Neighborhood& n) { return hr_weights(n.offset); }, sink);
            return;
        case Algorithm::AT:
            sweep_weighted(
                image, ratio,
                [domain](const Neighborhood& n) { return at_weights(n.offset, corner_intensities(n, domain)); },
                sink);
            return;
        case Algorithm::AC:
            sweep_weighted(
                image, ratio,
                [domain](const Neighborhood& n) { return ac_weights(n.offset, corner_intensities(n, domain)); },
                sink);
            return;
        case Algorithm::TN:
        case Algorithm::TC:
            break;
    }
    throw std::invalid_argument("scheme " + std::string(to_string(scheme.algorithm)) + " is not a weighted scheme");
}

}  // namespace

WeightVector scheme_weights(const Neighborhood& neigh, const Scheme& scheme) {
    switch (scheme.algorithm) {
        case Algorithm::TB: return tetragon_weights(neigh.offset);
        case Algorithm::MD: return md_weights(neigh.offset);
        case Algorithm::HR: return hr_weights(neigh.offset);
        case Algorithm::AT: return at_weights(neigh.offset, corner_intensities(neigh, scheme.domain));
        case Algorithm::AC: return ac_weights(neigh.offset, corner_intensities(neigh, scheme.domain));
        case Algorithm::TN:
        case Algorithm::TC:
            break;
    }
    throw std::invalid_argument("scheme " + std::string(to_string(scheme.algorithm)) + " is not a weighted scheme");
}

double blend(const Neighborhood& neigh, const WeightVector& w) noexcept {
    return w[0] * neigh.values[0] + w[1] * neigh.values[1] + w[2] * neigh.values[2] + w[3] * neigh.values[3];
}

std::uint8_t quantize(double value) noexcept {
    return static_cast<std::uint8_t>(std::clamp(std::round(value), 0.0, 255.0));
}

std::uint8_t interpolate_pixel(const Neighborhood& neigh, const WeightVector& w) noexcept {
    return quantize(blend(neigh, w));
}

double cubic_kernel(double t) noexcept {
    constexpr double a = -0.5;
    const double x = std::abs(t);
    if (x <= 1.0) {
        return ((a + 2.0) * x - (a + 3.0)) * x * x + 1.0;
    }
    if (x < 2.0) {
        return ((a * x - 5.0 * a) * x + 8.0 * a) * x - 4.0 * a;
    }
    return 0.0;
}

std::vector<double> resample_weighted(const GrayImage& image, double ratio, const Scheme& scheme) {
    const int out_w = output_extent(image.width(), ratio);
    const int out_h = output_extent(image.height(), ratio);
    std::vector<double> out(static_cast<std::size_t>(out_w) * out_h);
    dispatch_weighted(image, ratio, scheme,
                      [&](int x, int y, double v) { out[static_cast<std::size_t>(y) * out_w + x] = v; });
    return out;
}

GrayImage resize_weighted(const GrayImage& image, double ratio, const Scheme& scheme) {
    const int out_w = output_extent(image.width(), ratio);
    const int out_h = output_extent(image.height(), ratio);
    std::vector<std::uint8_t> out(static_cast<std::size_t>(out_w) * out_h);
    dispatch_weighted(image, ratio, scheme,
                      [&](int x, int y, double v) { out[static_cast<std::size_t>(y) * out_w + x] = quantize(v); });
    return GrayImage(out_w, out_h, std::move(out));
}

GrayImage resize_nearest(const GrayImage& image, double ratio) {
    const int out_w = output_extent(image.width(), ratio);
    const int out_h = output_extent(image.height(), ratio);
    std::vector<int> cols(static_cast<std::size_t>(out_w));
    for (int x = 0; x < out_w; ++x) {
        cols[x] = std::clamp(static_cast<int>(std::round(map_dst_to_src(x, ratio))), 0, image.width() - 1);
    }
    std::vector<std::uint8_t> out(static_cast<std::size_t>(out_w) * out_h);
    auto dst = out.begin();
    for (int y = 0; y < out_h; ++y) {
        const int sy = std::clamp(static_cast<int>(std::round(map_dst_to_src(y, ratio))), 0, image.height() - 1);
        const auto src = image.row(sy);
        for (int x = 0; x < out_w; ++x) *dst++ = src[cols[x]];
    }
    return GrayImage(out_w, out_h, std::move(out));
}

namespace {

struct CubicTaps {
    std::array<int, 4> index{};
    std::array<double, 4> weight{};
};

std::vector<CubicTaps> cubic_taps(int dst_extent, int src_extent, double ratio) {
    std::vector<CubicTaps> taps(static_cast<std::size_t>(dst_extent));
    for (int d = 0; d < dst_extent; ++d) {
        const double src = map_dst_to_src(d, ratio);
        const int base = static_cast<int>(std::floor(src));
        for (int k = 0; k < 4; ++k) {
            const int i = base - 1 + k;
            taps[d].index[k] = std::clamp(i, 0, src_extent - 1);
            taps[d].weight[k] = cubic_kernel(src - i);
        }
    }
    return taps;
}

}  // namespace

GrayImage resize_bicubic(const GrayImage& image, double ratio) {
    const int out_w = output_extent(image.width(), ratio);
    const int out_h = output_extent(image.height(), ratio);
    const std::vector<CubicTaps> cols = cubic_taps(out_w, image.width(), ratio);
    const std::vector<CubicTaps> rows = cubic_taps(out_h, image.height(), ratio);
    std::vector<std::uint8_t> out(static_cast<std::size_t>(out_w) * out_h);
    auto dst = out.begin();
    for (int y = 0; y < out_h; ++y) {
        const CubicTaps& ty = rows[y];
        for (int x = 0; x < out_w; ++x) {
            const CubicTaps& tx = cols[x];
            double acc = 0.0;
            for (int j = 0; j < 4; ++j) {
                const auto src = image.row(ty.index[j]);
                const double horizontal = tx.weight[0] * src[tx.index[0]] + tx.weight[1] * src[tx.index[1]] +
                                          tx.weight[2] * src[tx.index[2]] + tx.weight[3] * src[tx.index[3]];
                acc += ty.weight[j] * horizontal;
            }
            *dst++ = quantize(acc);
        }
    }
    return GrayImage(out_w, out_h, std::move(out));
}

GrayImage resize(const GrayImage& image, double ratio, const Scheme& scheme) {
    switch (scheme.algorithm) {
        case Algorithm::TN: return resize_nearest(image, ratio);
        case Algorithm::TC: return resize_bicubic(image, ratio);
        default: return resize_weighted(image, ratio, scheme);
    }
}

}  // namespace tetra
