#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace tetra {

/// 8-bit single-channel raster, row-major.
///
/// Immutable once built: every operation in the library reads images and
/// produces new ones, so a GrayImage can be shared freely across threads.
class GrayImage {
public:
    GrayImage() = default;
    /// Constant image. Throws std::invalid_argument for a zero dimension.
    GrayImage(int width, int height, std::uint8_t fill = 0);
    /// Takes ownership of `samples`; throws DataError if the length is not width*height.
    GrayImage(int width, int height, std::vector<std::uint8_t> samples);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t size() const noexcept { return samples_.size(); }
    bool empty() const noexcept { return samples_.empty(); }

    std::uint8_t at(int col, int row) const noexcept {
        return samples_[static_cast<std::size_t>(row) * width_ + col];
    }
    std::span<const std::uint8_t> row(int r) const noexcept {
        return {samples_.data() + static_cast<std::size_t>(r) * width_, static_cast<std::size_t>(width_)};
    }
    std::span<const std::uint8_t> samples() const noexcept { return samples_; }

    friend bool operator==(const GrayImage&, const GrayImage&) = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> samples_;
};

struct PixelCoord {
    int col = 0;
    int row = 0;
};

/// Clamps (col, row) into the image grid (replicate boundary).
inline PixelCoord clamp_coord(const GrayImage& image, int col, int row) noexcept {
    col = col < 0 ? 0 : (col >= image.width() ? image.width() - 1 : col);
    row = row < 0 ? 0 : (row >= image.height() ? image.height() - 1 : row);
    return {col, row};
}

/// Sample at the clamped position; never fails for a non-empty image.
inline std::uint8_t get_clamped(const GrayImage& image, int col, int row) noexcept {
    const PixelCoord c = clamp_coord(image, col, row);
    return image.at(c.col, c.row);
}

/// Rec.601 luma, round(0.299 R + 0.587 G + 0.114 B).
/// `rgb` holds interleaved triplets; throws DataError on a size mismatch.
GrayImage to_gray(std::span<const std::uint8_t> rgb, int width, int height);

/// Binary PGM (P5), maxval <= 255. Samples are returned as stored, no rescaling.
GrayImage load_pgm(const std::filesystem::path& path);
void save_pgm(const GrayImage& image, const std::filesystem::path& path);

/// Whether PNG decoding was compiled in.
bool png_supported() noexcept;

/// 8-bit gray or RGB(A) PNG; color is converted with to_gray, alpha is dropped.
GrayImage load_png(const std::filesystem::path& path);

/// Dispatches on the extension (.pgm / .png, case-insensitive).
GrayImage load_image(const std::filesystem::path& path);

}  // namespace tetra
