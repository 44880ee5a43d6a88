#include "tetra/weights.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tetra {

SidePairs corner_sides(FracOffset offset) noexcept {
    const double left = offset.dx;
    const double right = 1.0 - offset.dx;
    const double top = offset.dy;
    const double bottom = 1.0 - offset.dy;
    return {SidePair{right, bottom}, SidePair{left, bottom}, SidePair{right, top}, SidePair{left, top}};
}

std::optional<std::vector<double>> normalize(std::span<const double> raw) {
    double sum = 0.0;
    for (double x : raw) {
        if (!(x >= 0.0)) {
            throw std::invalid_argument("weights must be non-negative");
        }
        sum += x;
    }
    if (sum < kDegenerateSum) {
        return std::nullopt;
    }
    std::vector<double> out(raw.begin(), raw.end());
    for (double& x : out) x /= sum;
    return out;
}

namespace {

inline std::optional<WeightVector> normalize4(const RawWeights& raw) noexcept {
    const double sum = raw[0] + raw[1] + raw[2] + raw[3];
    if (sum < kDegenerateSum) {
        return std::nullopt;
    }
    return WeightVector{{raw[0] / sum, raw[1] / sum, raw[2] / sum, raw[3] / sum}};
}

inline WeightVector normalize_or_tetragon(const RawWeights& raw, FracOffset offset) noexcept {
    if (auto w = normalize4(raw)) {
        return *w;
    }
    return tetragon_weights(offset);
}

}  // namespace

std::optional<WeightVector> normalize(const RawWeights& raw) {
    if (std::any_of(raw.begin(), raw.end(), [](double x) { return !(x >= 0.0); })) {
        throw std::invalid_argument("weights must be non-negative");
    }
    return normalize4(raw);
}

RawWeights md_areas(FracOffset offset) noexcept {
    const SidePairs sides = corner_sides(offset);
    RawWeights raw{};
    for (std::size_t i = 0; i < 4; ++i) {
        const double diameter = std::min(sides[i].a, sides[i].b);
        raw[i] = std::numbers::pi / 4.0 * diameter * diameter;
    }
    return raw;
}

RawWeights hr_areas(FracOffset offset) noexcept {
    const SidePairs sides = corner_sides(offset);
    RawWeights raw{};
    for (std::size_t i = 0; i < 4; ++i) {
        raw[i] = std::numbers::pi * sides[i].hypotenuse_sq();
    }
    return raw;
}

RawWeights at_areas(FracOffset offset, const CornerIntensities& v) noexcept {
    const SidePairs sides = corner_sides(offset);
    RawWeights raw{};
    for (std::size_t i = 0; i < 4; ++i) {
        raw[i] = 0.5 * std::sqrt(sides[i].hypotenuse_sq()) * v.v[i];
    }
    return raw;
}

RawWeights ac_areas(FracOffset offset, const CornerIntensities& v) noexcept {
    const SidePairs sides = corner_sides(offset);
    RawWeights raw{};
    for (std::size_t i = 0; i < 4; ++i) {
        // radius^2 = height^2 + base^2, base being the tetragon hypotenuse
        raw[i] = std::numbers::pi * (v.v[i] * v.v[i] + sides[i].hypotenuse_sq());
    }
    return raw;
}

WeightVector tetragon_weights(FracOffset offset) noexcept {
    const SidePairs sides = corner_sides(offset);
    return WeightVector{{sides[0].a * sides[0].b, sides[1].a * sides[1].b, sides[2].a * sides[2].b,
                         sides[3].a * sides[3].b}};
}

WeightVector md_weights(FracOffset offset) noexcept { return normalize_or_tetragon(md_areas(offset), offset); }

WeightVector hr_weights(FracOffset offset) noexcept { return normalize_or_tetragon(hr_areas(offset), offset); }

WeightVector at_weights(FracOffset offset, const CornerIntensities& v) noexcept {
    return normalize_or_tetragon(at_areas(offset, v), offset);
}

WeightVector ac_weights(FracOffset offset, const CornerIntensities& v) noexcept {
    return normalize_or_tetragon(ac_areas(offset, v), offset);
}

}  // namespace tetra
