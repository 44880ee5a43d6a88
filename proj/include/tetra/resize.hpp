#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tetra/image.hpp"
#include "tetra/weights.hpp"

namespace tetra {

/// The seven resampling algorithms, tagged with their short names.
enum class Algorithm {
    TN,  ///< nearest neighbor
    TB,  ///< bilinear (tetragon areas)
    TC,  ///< bicubic, Keys a = -0.5
    MD,  ///< circle on the shorter tetragon side as diameter
    HR,  ///< circle on the tetragon hypotenuse as radius
    AT,  ///< triangle: hypotenuse base, intensity height
    AC,  ///< circle on the intensity/hypotenuse hypotenuse as radius
};

inline constexpr std::array<Algorithm, 7> kAllAlgorithms = {
    Algorithm::TN, Algorithm::TB, Algorithm::TC, Algorithm::MD, Algorithm::HR, Algorithm::AT, Algorithm::AC};

std::string_view to_string(Algorithm algorithm) noexcept;
/// Accepts the two-letter tag, case-insensitive.
std::optional<Algorithm> parse_algorithm(std::string_view tag) noexcept;

std::string_view to_string(IntensityDomain domain) noexcept;
std::optional<IntensityDomain> parse_intensity_domain(std::string_view name) noexcept;

/// An algorithm plus the intensity domain AT/AC read corner values in.
struct Scheme {
    Algorithm algorithm = Algorithm::TB;
    IntensityDomain domain = IntensityDomain::raw;

    /// True for the 2x2 weighted family handled by resize_weighted().
    bool is_weighted() const noexcept {
        return algorithm != Algorithm::TN && algorithm != Algorithm::TC;
    }
};

/// Four corner samples (P1..P4) and the point's offset inside them.
struct Neighborhood {
    std::array<std::uint8_t, 4> values{};
    FracOffset offset;
};

/// Pixel-center mapping: (dst + 0.5) / scale - 0.5.
constexpr double map_dst_to_src(int dst, double scale) noexcept {
    return (dst + 0.5) / scale - 0.5;
}

/// round(extent * ratio); throws std::invalid_argument if ratio <= 0 or the result is < 1.
int output_extent(int extent, double ratio);

/// Corners at floor(src) and floor(src)+1, fetched with clamping.
Neighborhood gather_neighborhood(const GrayImage& image, double src_x, double src_y) noexcept;

/// Weights for one neighborhood under a weighted scheme (TB, MD, HR, AT, AC).
WeightVector scheme_weights(const Neighborhood& neigh, const Scheme& scheme);

/// Sum of w_i * P_i before quantization.
double blend(const Neighborhood& neigh, const WeightVector& w) noexcept;

/// Rounds half away from zero and clamps into [0,255].
std::uint8_t quantize(double value) noexcept;

/// quantize(blend(neigh, w)).
std::uint8_t interpolate_pixel(const Neighborhood& neigh, const WeightVector& w) noexcept;

/// Keys cubic convolution kernel with a = -0.5.
double cubic_kernel(double t) noexcept;

/// Unquantized output of a weighted scheme, row-major, for oracle comparisons.
std::vector<double> resample_weighted(const GrayImage& image, double ratio, const Scheme& scheme);

GrayImage resize_weighted(const GrayImage& image, double ratio, const Scheme& scheme);
GrayImage resize_nearest(const GrayImage& image, double ratio);
GrayImage resize_bicubic(const GrayImage& image, double ratio);

/// Dispatches to the right resize for `scheme.algorithm`.
GrayImage resize(const GrayImage& image, double ratio, const Scheme& scheme);

}  // namespace tetra
