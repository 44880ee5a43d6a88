#pragma once

#include <vector>

#include "tetra/image.hpp"

namespace tetra {

/// Full-reference scores of a processed image against its pristine reference.
struct QualityScores {
    double mse = 0.0;
    double psnr = 0.0;  ///< +infinity when mse == 0
    double ssim = 1.0;
};

/// SSIM constants for 8-bit data.
struct SsimParams {
    int window = 11;
    double sigma = 1.5;
    double k1 = 0.01;
    double k2 = 0.03;
    double dynamic_range = 255.0;
};

/// Mean squared error. Throws DataError if the dimensions differ.
double mse(const GrayImage& a, const GrayImage& b);

/// 10 log10(255^2 / mse), +infinity for mse == 0.
double psnr_from_mse(double mse) noexcept;
double psnr(const GrayImage& a, const GrayImage& b);

/// Mean single-scale SSIM with a Gaussian window and symmetric border reflection.
/// Throws DataError if the dimensions differ or either side is shorter than the window.
double ssim(const GrayImage& a, const GrayImage& b, const SsimParams& params = {});

/// size x size samples of exp(-(x^2+y^2)/(2 sigma^2)), normalized to sum 1, row-major.
/// Throws std::invalid_argument for an even or non-positive size.
std::vector<double> gaussian_window(int size, double sigma);

QualityScores score(const GrayImage& reference, const GrayImage& test);

}  // namespace tetra
