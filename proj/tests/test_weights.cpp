#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "tetra/weights.hpp"

using namespace tetra;

namespace {

void check_weights(const WeightVector& w, std::array<double, 4> expected, double tol = 1e-12) {
    for (std::size_t i = 0; i < 4; ++i) {
        INFO("corner " << i + 1 << ": " << w[i] << " vs " << expected[i]);
        CHECK(std::abs(w[i] - expected[i]) <= tol);
    }
}

void check_valid(const WeightVector& w) {
    for (double x : w.w) REQUIRE(x >= 0.0);
    REQUIRE(std::abs(w.sum() - 1.0) <= 1e-12);
}

WeightVector swap_x(const WeightVector& w) { return {{w[1], w[0], w[3], w[2]}}; }
WeightVector swap_y(const WeightVector& w) { return {{w[2], w[3], w[0], w[1]}}; }

}  // namespace

TEST_CASE("corner_sides follows the opposite-tetragon convention") {
    CHECK(corner_sides({0, 0}) == SidePairs{SidePair{1, 1}, SidePair{0, 1}, SidePair{1, 0}, SidePair{0, 0}});
    CHECK(corner_sides({0.5, 0.5}) ==
          SidePairs{SidePair{0.5, 0.5}, SidePair{0.5, 0.5}, SidePair{0.5, 0.5}, SidePair{0.5, 0.5}});
    CHECK(corner_sides({0.25, 0.5}) ==
          SidePairs{SidePair{0.75, 0.5}, SidePair{0.25, 0.5}, SidePair{0.75, 0.5}, SidePair{0.25, 0.5}});
}

TEST_CASE("side products equal the tetragon weights") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const FracOffset o{u(rng), u(rng)};
        const SidePairs s = corner_sides(o);
        const WeightVector t = tetragon_weights(o);
        for (std::size_t k = 0; k < 4; ++k) CHECK(s[k].a * s[k].b == t[k]);
    }
}

TEST_CASE("normalize") {
    const std::vector<double> a{2, 3, 5};
    const auto n = normalize(a);
    REQUIRE(n);
    CHECK((*n)[0] == doctest::Approx(0.2));
    CHECK((*n)[1] == doctest::Approx(0.3));
    CHECK((*n)[2] == doctest::Approx(0.5));

    const auto q = normalize(RawWeights{1, 1, 1, 1});
    REQUIRE(q);
    check_weights(*q, {0.25, 0.25, 0.25, 0.25}, 0.0);

    CHECK_FALSE(normalize(RawWeights{0, 0, 0, 0}));
    CHECK_FALSE(normalize(std::vector<double>{1e-13, 0}));
    CHECK_THROWS_AS(normalize(std::vector<double>{1, -1}), std::invalid_argument);
}

TEST_CASE("tetragon weights") {
    check_weights(tetragon_weights({0, 0}), {1, 0, 0, 0}, 0.0);
    check_weights(tetragon_weights({0.5, 0.5}), {0.25, 0.25, 0.25, 0.25}, 0.0);
    check_weights(tetragon_weights({0.25, 0.5}), {0.375, 0.125, 0.375, 0.125}, 0.0);
}

TEST_CASE("tetragon weights sum to one without normalization") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const WeightVector w = tetragon_weights({u(rng), u(rng)});
        REQUIRE(std::abs(w.sum() - 1.0) <= 1e-14);
    }
}

TEST_CASE("MD weights") {
    check_weights(md_weights({0, 0}), {1, 0, 0, 0});
    check_weights(md_weights({0.5, 0.5}), {0.25, 0.25, 0.25, 0.25});
    check_weights(md_weights({0.25, 0.5}), {0.4, 0.1, 0.4, 0.1});
    // Raw areas are circle areas on the shorter side as diameter.
    const RawWeights raw = md_areas({0.25, 0.5});
    CHECK(raw[0] == doctest::Approx(std::numbers::pi / 4 * 0.25));
    CHECK(raw[1] == doctest::Approx(std::numbers::pi / 4 * 0.0625));
}

TEST_CASE("HR weights") {
    check_weights(hr_weights({0.5, 0.5}), {0.25, 0.25, 0.25, 0.25});
    check_weights(hr_weights({0, 0}), {0.5, 0.25, 0.25, 0});
    check_weights(hr_weights({0.25, 0.5}), {13.0 / 36, 5.0 / 36, 13.0 / 36, 5.0 / 36});
    const RawWeights raw = hr_areas({0.25, 0.5});
    CHECK(raw[0] == doctest::Approx(std::numbers::pi * 0.8125));
    CHECK(raw[3] == doctest::Approx(std::numbers::pi * 0.3125));
}

TEST_CASE("AT weights") {
    check_weights(at_weights({0.5, 0.5}, {{7, 7, 7, 7}}), {0.25, 0.25, 0.25, 0.25});
    check_weights(at_weights({0.5, 0.5}, {{10, 20, 30, 40}}), {0.1, 0.2, 0.3, 0.4});
    // Triangle area: half of hypotenuse times intensity.
    const RawWeights raw = at_areas({0, 0}, {{4, 4, 4, 4}});
    CHECK(raw[0] == doctest::Approx(0.5 * std::sqrt(2.0) * 4));
    CHECK(raw[1] == doctest::Approx(0.5 * 1.0 * 4));
    CHECK(raw[3] == 0.0);
}

TEST_CASE("AT falls back to tetragon weights on black corners") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        const FracOffset o{u(rng), u(rng)};
        const WeightVector w = at_weights(o, {{0, 0, 0, 0}});
        const WeightVector t = tetragon_weights(o);
        for (std::size_t k = 0; k < 4; ++k) CHECK(w[k] == t[k]);
    }
    // (0,0) with only P4 lit: P4's hypotenuse is zero, so every area vanishes.
    check_weights(at_weights({0, 0}, {{0, 0, 0, 9}}), {1, 0, 0, 0}, 0.0);
}

TEST_CASE("AC weights") {
    check_weights(ac_weights({0.5, 0.5}, {{0, 0, 0, 0}}), {0.25, 0.25, 0.25, 0.25});
    check_weights(ac_weights({0, 0}, {{1, 1, 1, 1}}), {0.375, 0.25, 0.25, 0.125});
    check_weights(ac_weights({0.5, 0.5}, {{0, 1, 0, 0}}), {1.0 / 6, 0.5, 1.0 / 6, 1.0 / 6});
    const RawWeights raw = ac_areas({0, 0}, {{1, 1, 1, 1}});
    CHECK(raw[0] == doctest::Approx(std::numbers::pi * 3));
    CHECK(raw[3] == doctest::Approx(std::numbers::pi * 1));
}

TEST_CASE("every scheme yields a partition of unity on random inputs") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> px(0, 255);
    for (int i = 0; i < 10000; ++i) {
        const FracOffset o{u(rng), u(rng)};
        CornerIntensities raw{{double(px(rng)), double(px(rng)), double(px(rng)), double(px(rng))}};
        CornerIntensities unit = raw;
        for (double& v : unit.v) v /= 255.0;
        check_valid(tetragon_weights(o));
        check_valid(md_weights(o));
        check_valid(hr_weights(o));
        check_valid(at_weights(o, raw));
        check_valid(at_weights(o, unit));
        check_valid(ac_weights(o, raw));
        check_valid(ac_weights(o, unit));
    }
}

TEST_CASE("corner offsets are also valid") {
    for (double dx : {0.0, 1.0})
        for (double dy : {0.0, 1.0}) {
            check_valid(md_weights({dx, dy}));
            check_valid(hr_weights({dx, dy}));
            check_valid(at_weights({dx, dy}, {{0, 0, 0, 0}}));
            check_valid(ac_weights({dx, dy}, {{0, 0, 0, 0}}));
        }
}

TEST_CASE("mirroring the offset permutes position-only weights") {
    std::mt19937 rng(8);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        const double dx = u(rng), dy = u(rng);
        for (auto scheme : {&tetragon_weights, &md_weights, &hr_weights}) {
            const WeightVector w = scheme({dx, dy});
            const WeightVector mx = swap_x(scheme({1 - dx, dy}));
            const WeightVector my = swap_y(scheme({dx, 1 - dy}));
            for (std::size_t k = 0; k < 4; ++k) {
                CHECK(std::abs(w[k] - mx[k]) <= 1e-12);
                CHECK(std::abs(w[k] - my[k]) <= 1e-12);
            }
        }
    }
}

TEST_CASE("AT is invariant under intensity scaling") {
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_real_distribution<double> k(0.01, 100.0);
    for (int i = 0; i < 2000; ++i) {
        const FracOffset o{u(rng), u(rng)};
        CornerIntensities v{{255 * u(rng), 255 * u(rng), 255 * u(rng), 255 * u(rng)}};
        const double s = k(rng);
        CornerIntensities scaled = v;
        for (double& x : scaled.v) x *= s;
        const WeightVector a = at_weights(o, v);
        const WeightVector b = at_weights(o, scaled);
        for (std::size_t j = 0; j < 4; ++j) REQUIRE(std::abs(a[j] - b[j]) <= 1e-12);
    }
}

TEST_CASE("AC is not scale invariant") {
    const WeightVector a = ac_weights({0.25, 0.5}, {{1, 2, 3, 4}});
    const WeightVector b = ac_weights({0.25, 0.5}, {{10, 20, 30, 40}});
    CHECK(std::abs(a[0] - b[0]) > 1e-3);
}

TEST_CASE("AC under raw intensities barely depends on the offset") {
    std::mt19937 rng(10);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const CornerIntensities v{{200, 200, 200, 200}};
    double max_dev = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const WeightVector w = ac_weights({u(rng), u(rng)}, v);
        for (double x : w.w) max_dev = std::max(max_dev, std::abs(x - 0.25));
    }
    for (double dx : {0.0, 1.0})
        for (double dy : {0.0, 1.0})
            for (double x : ac_weights({dx, dy}, v).w) max_dev = std::max(max_dev, std::abs(x - 0.25));
    CHECK(max_dev < 0.005);
}

TEST_CASE("at a grid node tetragon and MD select P1, HR does not") {
    CHECK(tetragon_weights({0, 0})[0] == 1.0);
    CHECK(md_weights({0, 0})[0] == 1.0);
    CHECK(hr_weights({0, 0})[0] == doctest::Approx(0.5));
}

TEST_CASE("intensity domain conversion") {
    CHECK(to_domain(255, IntensityDomain::raw) == 255.0);
    CHECK(to_domain(255, IntensityDomain::unit) == 1.0);
    CHECK(to_domain(0, IntensityDomain::unit) == 0.0);
}
