#include "tetra/image.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <stdexcept>
#include <string>

#include "tetra/error.hpp"

#ifdef TETRA_HAVE_PNG
#include <png.h>
#endif

namespace tetra {

GrayImage::GrayImage(int width, int height, std::uint8_t fill) : width_(width), height_(height) {
    if (width < 1 || height < 1) {
        throw std::invalid_argument("image dimensions must be positive");
    }
    samples_.assign(static_cast<std::size_t>(width) * height, fill);
}

GrayImage::GrayImage(int width, int height, std::vector<std::uint8_t> samples)
    : width_(width), height_(height), samples_(std::move(samples)) {
    if (width < 1 || height < 1) {
        throw std::invalid_argument("image dimensions must be positive");
    }
    if (samples_.size() != static_cast<std::size_t>(width) * height) {
        throw DataError("sample count " + std::to_string(samples_.size()) + " does not match " +
                        std::to_string(width) + "x" + std::to_string(height));
    }
}

GrayImage to_gray(std::span<const std::uint8_t> rgb, int width, int height) {
    if (width < 1 || height < 1 || rgb.size() != 3 * static_cast<std::size_t>(width) * height) {
        throw DataError("RGB buffer size does not match 3 x " + std::to_string(width) + " x " +
                        std::to_string(height));
    }
    std::vector<std::uint8_t> out(rgb.size() / 3);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double luma = 0.299 * rgb[3 * i] + 0.587 * rgb[3 * i + 1] + 0.114 * rgb[3 * i + 2];
        out[i] = static_cast<std::uint8_t>(std::clamp(std::round(luma), 0.0, 255.0));
    }
    return GrayImage(width, height, std::move(out));
}

namespace {

// Reads one whitespace-delimited header token, skipping '#' comments.
std::string next_token(std::istream& in, const std::filesystem::path& path) {
    std::string token;
    int c = in.get();
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n' && c != '\r') c = in.get();
        } else if (std::isspace(c)) {
            c = in.get();
        } else {
            break;
        }
    }
    while (c != EOF && !std::isspace(c) && c != '#') {
        token.push_back(static_cast<char>(c));
        c = in.get();
    }
    if (token.empty()) {
        throw DataError(path.string() + ": truncated PGM header");
    }
    // The single whitespace character after maxval has been consumed here.
    if (c == '#') in.unget();
    return token;
}

int parse_positive(const std::string& token, const std::filesystem::path& path, const char* field) {
    if (token.empty() || !std::all_of(token.begin(), token.end(), [](unsigned char ch) { return std::isdigit(ch); }) ||
        token.size() > 9) {
        throw DataError(path.string() + ": malformed PGM " + field + " '" + token + "'");
    }
    const int value = std::stoi(token);
    if (value < 1) {
        throw DataError(path.string() + ": PGM " + field + " must be positive");
    }
    return value;
}

std::string lower_extension(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char ch) { return std::tolower(ch); });
    return ext;
}

}  // namespace

GrayImage load_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    if (next_token(in, path) != "P5") {
        throw DataError(path.string() + ": not a binary PGM (P5)");
    }
    const int width = parse_positive(next_token(in, path), path, "width");
    const int height = parse_positive(next_token(in, path), path, "height");
    const int maxval = parse_positive(next_token(in, path), path, "maxval");
    if (maxval > 255) {
        throw DataError(path.string() + ": unsupported depth (maxval " + std::to_string(maxval) + ")");
    }
    std::vector<std::uint8_t> samples(static_cast<std::size_t>(width) * height);
    in.read(reinterpret_cast<char*>(samples.data()), static_cast<std::streamsize>(samples.size()));
    if (static_cast<std::size_t>(in.gcount()) != samples.size()) {
        throw DataError(path.string() + ": truncated PGM data");
    }
    return GrayImage(width, height, std::move(samples));
}

void save_pgm(const GrayImage& image, const std::filesystem::path& path) {
    if (image.empty()) {
        throw std::invalid_argument("cannot save an empty image");
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out << "P5\n" << image.width() << ' ' << image.height() << "\n255\n";
    out.write(reinterpret_cast<const char*>(image.samples().data()),
              static_cast<std::streamsize>(image.size()));
    out.flush();
    if (!out) {
        throw IoError("write failed: " + path.string());
    }
}

#ifdef TETRA_HAVE_PNG

bool png_supported() noexcept { return true; }

GrayImage load_png(const std::filesystem::path& path) {
    png_image png{};
    png.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&png, path.string().c_str())) {
        const std::string msg = png.message;
        png_image_free(&png);
        if (!std::filesystem::exists(path)) {
            throw IoError("cannot open " + path.string());
        }
        throw DataError(path.string() + ": " + msg);
    }
    if (png.format & PNG_FORMAT_FLAG_LINEAR) {
        png_image_free(&png);
        throw DataError(path.string() + ": unsupported depth (16-bit PNG)");
    }
    const bool color = (png.format & PNG_FORMAT_FLAG_COLOR) != 0;
    png.format = color ? PNG_FORMAT_RGBA : PNG_FORMAT_GA;
    const int channels = color ? 4 : 2;
    const int width = static_cast<int>(png.width);
    const int height = static_cast<int>(png.height);
    std::vector<std::uint8_t> buffer(PNG_IMAGE_SIZE(png));
    if (!png_image_finish_read(&png, nullptr, buffer.data(), 0, nullptr)) {
        const std::string msg = png.message;
        png_image_free(&png);
        throw DataError(path.string() + ": " + msg);
    }
    const std::size_t pixels = static_cast<std::size_t>(width) * height;
    if (!color) {
        std::vector<std::uint8_t> gray(pixels);
        for (std::size_t i = 0; i < pixels; ++i) gray[i] = buffer[channels * i];
        return GrayImage(width, height, std::move(gray));
    }
    std::vector<std::uint8_t> rgb(3 * pixels);
    for (std::size_t i = 0; i < pixels; ++i) {
        std::copy_n(buffer.begin() + static_cast<std::ptrdiff_t>(channels * i), 3,
                    rgb.begin() + static_cast<std::ptrdiff_t>(3 * i));
    }
    return to_gray(rgb, width, height);
}

#else

bool png_supported() noexcept { return false; }

GrayImage load_png(const std::filesystem::path& path) {
    throw DataError(path.string() + ": built without PNG support");
}

#endif

GrayImage load_image(const std::filesystem::path& path) {
    const std::string ext = lower_extension(path);
    if (ext == ".pgm") return load_pgm(path);
    if (ext == ".png") return load_png(path);
    throw DataError(path.string() + ": unsupported image format '" + ext + "'");
}

}  // namespace tetra
