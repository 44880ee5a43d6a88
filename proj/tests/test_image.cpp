#include <fstream>
#include <iterator>
#include <random>
#include <string>

#include "doctest.h"
#include "tetra/error.hpp"
#include "tetra/image.hpp"
#include "test_support.hpp"

using namespace tetra;
using tetra::testing::TempDir;

namespace {

void write_bytes(const std::filesystem::path& p, const std::string& bytes) {
    std::ofstream out(p, std::ios::binary);
    out << bytes;
}

std::string read_bytes(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("GrayImage rejects inconsistent construction") {
    CHECK_THROWS_AS(GrayImage(2, 2, std::vector<std::uint8_t>{1, 2, 3}), DataError);
    CHECK_THROWS_AS(GrayImage(0, 3), std::invalid_argument);
    const GrayImage img(3, 2, 9);
    CHECK(img.size() == 6);
    CHECK(img.at(2, 1) == 9);
}

TEST_CASE("load_pgm reads exact bytes") {
    TempDir dir("image");
    write_bytes(dir / "a.pgm", std::string("P5\n2 2\n255\n") + std::string("\x00\xff\x80\x40", 4));
    const GrayImage img = load_pgm(dir / "a.pgm");
    CHECK(img == GrayImage(2, 2, {0, 255, 128, 64}));
}

TEST_CASE("load_pgm accepts header comments and a small maxval without rescaling") {
    TempDir dir("image");
    write_bytes(dir / "c.pgm", std::string("P5 # comment\n# another\n1 2 15\n") + std::string("\x03\x0f", 2));
    CHECK(load_pgm(dir / "c.pgm") == GrayImage(1, 2, {3, 15}));
}

TEST_CASE("load_pgm errors") {
    TempDir dir("image");
    CHECK_THROWS_AS(load_pgm(dir / "missing.pgm"), IoError);

    write_bytes(dir / "deep.pgm", std::string("P5\n1 1\n65535\n") + std::string("\x00\x01", 2));
    try {
        load_pgm(dir / "deep.pgm");
        FAIL("expected unsupported depth");
    } catch (const DataError& e) {
        CHECK(std::string(e.what()).find("unsupported depth") != std::string::npos);
    }

    write_bytes(dir / "p2.pgm", "P2\n1 1\n255\n7\n");
    CHECK_THROWS_AS(load_pgm(dir / "p2.pgm"), DataError);
    write_bytes(dir / "short.pgm", std::string("P5\n4 4\n255\n") + "abc");
    CHECK_THROWS_AS(load_pgm(dir / "short.pgm"), DataError);
    write_bytes(dir / "bad.pgm", "P5\nx 4\n255\n");
    CHECK_THROWS_AS(load_pgm(dir / "bad.pgm"), DataError);
    write_bytes(dir / "empty.pgm", "");
    CHECK_THROWS_AS(load_pgm(dir / "empty.pgm"), DataError);
}

TEST_CASE("save_pgm writes the canonical header") {
    TempDir dir("image");
    save_pgm(GrayImage(1, 1, {7}), dir / "one.pgm");
    CHECK(read_bytes(dir / "one.pgm") == std::string("P5\n1 1\n255\n\x07", 12));
}

TEST_CASE("save_pgm reports I/O failures") {
    TempDir dir("image");
    CHECK_THROWS_AS(save_pgm(GrayImage(1, 1, {7}), ""), IoError);
    CHECK_THROWS_AS(save_pgm(GrayImage(1, 1, {7}), dir / "no" / "such" / "dir.pgm"), IoError);
}

TEST_CASE("PGM round trip is bit exact on random images") {
    TempDir dir("image");
    std::mt19937 rng(42);
    for (int trial = 0; trial < 20; ++trial) {
        std::uniform_int_distribution<int> extent(1, 64);
        const int w = trial == 0 ? 64 : extent(rng);
        const int h = trial == 0 ? 64 : extent(rng);
        const GrayImage img = tetra::testing::random_image(rng, w, h);
        save_pgm(img, dir / "rt.pgm");
        REQUIRE(load_pgm(dir / "rt.pgm") == img);
    }
}

TEST_CASE("to_gray uses rounded Rec.601 luma") {
    const std::vector<std::uint8_t> rgb = {255, 255, 255, 255, 0, 0, 0, 0, 0, 0, 255, 0};
    const GrayImage g = to_gray(rgb, 2, 2);
    CHECK(g.at(0, 0) == 255);
    CHECK(g.at(1, 0) == 76);
    CHECK(g.at(0, 1) == 0);
    CHECK(g.at(1, 1) == 150);  // 0.587 * 255 = 149.685
    CHECK_THROWS_AS(to_gray(rgb, 3, 2), DataError);
}

TEST_CASE("to_gray stays in range for every primary extreme") {
    std::vector<std::uint8_t> rgb;
    for (int r : {0, 255})
        for (int g : {0, 255})
            for (int b : {0, 255}) rgb.insert(rgb.end(), {std::uint8_t(r), std::uint8_t(g), std::uint8_t(b)});
    const GrayImage g = to_gray(rgb, 8, 1);
    CHECK(g.at(7, 0) == 255);
    CHECK(g.at(0, 0) == 0);
}

TEST_CASE("get_clamped replicates borders") {
    std::mt19937 rng(1);
    const GrayImage img = tetra::testing::random_image(rng, 5, 4);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 5; ++c) CHECK(get_clamped(img, c, r) == img.at(c, r));
    CHECK(get_clamped(img, -1, 2) == img.at(0, 2));
    CHECK(get_clamped(img, 5, 2) == img.at(4, 2));
    CHECK(get_clamped(img, -100, 100) == img.at(0, 3));
}

TEST_CASE("load_image dispatches on extension") {
    TempDir dir("image");
    save_pgm(GrayImage(2, 1, {1, 2}), dir / "x.PGM");
    CHECK(load_image(dir / "x.PGM") == GrayImage(2, 1, {1, 2}));
    CHECK_THROWS_AS(load_image(dir / "x.bmp"), DataError);
}

#ifdef TETRA_HAVE_PNG
#include <png.h>

namespace {

void write_png(const std::filesystem::path& p, int w, int h, std::uint32_t format, const std::vector<std::uint8_t>& data) {
    png_image png{};
    png.version = PNG_IMAGE_VERSION;
    png.width = static_cast<png_uint_32>(w);
    png.height = static_cast<png_uint_32>(h);
    png.format = format;
    REQUIRE(png_image_write_to_file(&png, p.string().c_str(), 0, data.data(), 0, nullptr));
}

}  // namespace

TEST_CASE("load_png reads gray and converts RGB") {
    TempDir dir("png");
    write_png(dir / "g.png", 2, 1, PNG_FORMAT_GRAY, {3, 250});
    CHECK(load_image(dir / "g.png") == GrayImage(2, 1, {3, 250}));
    write_png(dir / "c.png", 2, 1, PNG_FORMAT_RGBA, {255, 0, 0, 10, 255, 255, 255, 255});
    CHECK(load_png(dir / "c.png") == GrayImage(2, 1, {76, 255}));
    CHECK_THROWS_AS(load_png(dir / "missing.png"), IoError);
}
#endif
