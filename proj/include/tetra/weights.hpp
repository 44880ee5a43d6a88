#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

// Per-pixel weighting schemes over the unit square spanned by four source pixels.
//
// Corner order is fixed throughout: P1 top-left, P2 top-right, P3 bottom-left,
// P4 bottom-right. The weight of a corner comes from the tetragon between the
// interpolation point and the diagonally opposite corner, so the nearest corner
// always receives the largest tetragon.

namespace tetra {

/// Position of the interpolation point inside its unit square, both in [0,1].
struct FracOffset {
    double dx = 0.0;
    double dy = 0.0;
};

/// Legs of the right triangle spanned by one tetragon. The hypotenuse is derived.
struct SidePair {
    double a = 0.0;
    double b = 0.0;

    double hypotenuse_sq() const noexcept { return a * a + b * b; }
    friend bool operator==(const SidePair&, const SidePair&) = default;
};

using SidePairs = std::array<SidePair, 4>;
using RawWeights = std::array<double, 4>;

/// Four non-negative weights summing to one.
struct WeightVector {
    std::array<double, 4> w{};

    double operator[](std::size_t i) const noexcept { return w[i]; }
    double sum() const noexcept { return w[0] + w[1] + w[2] + w[3]; }
};

/// Virtual pixel lengths of P1..P4, already converted to the active intensity domain.
struct CornerIntensities {
    std::array<double, 4> v{};
};

/// Numeric domain of the virtual pixel length used by AT and AC.
enum class IntensityDomain {
    raw,   ///< grayscale value as is, [0,255]
    unit,  ///< grayscale value / 255, [0,1]
};

/// Sums below this are treated as degenerate by normalize().
inline constexpr double kDegenerateSum = 1e-12;

/// Converts an 8-bit sample into the given intensity domain.
constexpr double to_domain(double sample, IntensityDomain domain) noexcept {
    return domain == IntensityDomain::unit ? sample / 255.0 : sample;
}

/// Side pairs in corner order: P1 (1-dx,1-dy), P2 (dx,1-dy), P3 (1-dx,dy), P4 (dx,dy).
SidePairs corner_sides(FracOffset offset) noexcept;

/// Divides each entry by the sum. Returns nullopt when the sum is below
/// kDegenerateSum; throws std::invalid_argument for a negative entry.
std::optional<std::vector<double>> normalize(std::span<const double> raw);

/// Four-entry form used on the per-pixel path; same contract as above.
std::optional<WeightVector> normalize(const RawWeights& raw);

// Raw areas keep their geometric constants (pi/4, pi, 1/2) so they can be
// compared with the area formulas directly. Normalization cancels them.

/// Circle whose diameter is the shorter tetragon side: (pi/4) * min(a,b)^2.
RawWeights md_areas(FracOffset offset) noexcept;
/// Circle whose radius is the tetragon hypotenuse: pi * (a^2 + b^2).
RawWeights hr_areas(FracOffset offset) noexcept;
/// Triangle with the hypotenuse as base and the corner intensity as height.
RawWeights at_areas(FracOffset offset, const CornerIntensities& v) noexcept;
/// Circle whose radius is the hypotenuse of (corner intensity, tetragon hypotenuse).
RawWeights ac_areas(FracOffset offset, const CornerIntensities& v) noexcept;

/// Bilinear weights: tetragon areas, which already sum to one.
WeightVector tetragon_weights(FracOffset offset) noexcept;

// The schemes below normalize their raw areas and fall back to
// tetragon_weights() if the areas are degenerate.
WeightVector md_weights(FracOffset offset) noexcept;
WeightVector hr_weights(FracOffset offset) noexcept;
WeightVector at_weights(FracOffset offset, const CornerIntensities& v) noexcept;
WeightVector ac_weights(FracOffset offset, const CornerIntensities& v) noexcept;

}  // namespace tetra
