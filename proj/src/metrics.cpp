#include "tetra/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "tetra/error.hpp"

namespace tetra {

namespace {

void require_same_dims(const GrayImage& a, const GrayImage& b) {
    if (a.width() != b.width() || a.height() != b.height()) {
        throw DataError("dimension mismatch: " + std::to_string(a.width()) + "x" + std::to_string(a.height()) +
                        " vs " + std::to_string(b.width()) + "x" + std::to_string(b.height()));
    }
}

// 1-D normalized Gaussian; the 2-D window is its outer product.
std::vector<double> gaussian_1d(int size, double sigma) {
    if (size < 1 || size % 2 == 0) {
        throw std::invalid_argument("gaussian window size must be odd and positive");
    }
    if (!(sigma > 0.0)) {
        throw std::invalid_argument("gaussian sigma must be positive");
    }
    const int half = size / 2;
    std::vector<double> g(static_cast<std::size_t>(size));
    double sum = 0.0;
    for (int i = 0; i < size; ++i) {
        const double x = i - half;
        g[i] = std::exp(-(x * x) / (2.0 * sigma * sigma));
        sum += g[i];
    }
    for (double& v : g) v /= sum;
    return g;
}

// Symmetric reflection (edge sample repeated): -1 -> 0, -2 -> 1, n -> n-1.
int reflect(int i, int n) noexcept {
    while (i < 0 || i >= n) {
        if (i < 0) i = -i - 1;
        if (i >= n) i = 2 * n - i - 1;
    }
    return i;
}

// Separable Gaussian filtering of a row-major plane with reflected borders.
std::vector<double> filter(const std::vector<double>& src, int w, int h, const std::vector<double>& g) {
    const int half = static_cast<int>(g.size()) / 2;
    std::vector<double> tmp(src.size());
    for (int y = 0; y < h; ++y) {
        const double* row = src.data() + static_cast<std::size_t>(y) * w;
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int k = -half; k <= half; ++k) acc += g[k + half] * row[reflect(x + k, w)];
            tmp[static_cast<std::size_t>(y) * w + x] = acc;
        }
    }
    std::vector<double> out(src.size());
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int k = -half; k <= half; ++k) {
                acc += g[k + half] * tmp[static_cast<std::size_t>(reflect(y + k, h)) * w + x];
            }
            out[static_cast<std::size_t>(y) * w + x] = acc;
        }
    }
    return out;
}

}  // namespace

double mse(const GrayImage& a, const GrayImage& b) {
    require_same_dims(a, b);
    const auto sa = a.samples();
    const auto sb = b.samples();
    double sum = 0.0;
    for (std::size_t i = 0; i < sa.size(); ++i) {
        const double d = static_cast<double>(sa[i]) - static_cast<double>(sb[i]);
        sum += d * d;
    }
    return sum / static_cast<double>(sa.size());
}

double psnr_from_mse(double mse) noexcept {
    if (mse <= 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return 10.0 * std::log10(255.0 * 255.0 / mse);
}

double psnr(const GrayImage& a, const GrayImage& b) { return psnr_from_mse(mse(a, b)); }

std::vector<double> gaussian_window(int size, double sigma) {
    const std::vector<double> g = gaussian_1d(size, sigma);
    std::vector<double> w(static_cast<std::size_t>(size) * size);
    double sum = 0.0;
    for (int i = 0; i < size; ++i) {
        for (int j = 0; j < size; ++j) {
            w[static_cast<std::size_t>(i) * size + j] = g[i] * g[j];
            sum += g[i] * g[j];
        }
    }
    for (double& v : w) v /= sum;
    return w;
}

double ssim(const GrayImage& a, const GrayImage& b, const SsimParams& params) {
    require_same_dims(a, b);
    if (a.width() < params.window || a.height() < params.window) {
        throw DataError("image smaller than the " + std::to_string(params.window) + "x" +
                        std::to_string(params.window) + " SSIM window");
    }
    const int w = a.width();
    const int h = a.height();
    const std::size_t n = a.size();
    std::vector<double> x(n), y(n), xx(n), yy(n), xy(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = a.samples()[i];
        y[i] = b.samples()[i];
        xx[i] = x[i] * x[i];
        yy[i] = y[i] * y[i];
        xy[i] = x[i] * y[i];
    }
    const std::vector<double> g = gaussian_1d(params.window, params.sigma);
    const auto mu_x = filter(x, w, h, g);
    const auto mu_y = filter(y, w, h, g);
    const auto e_xx = filter(xx, w, h, g);
    const auto e_yy = filter(yy, w, h, g);
    const auto e_xy = filter(xy, w, h, g);

    const double c1 = (params.k1 * params.dynamic_range) * (params.k1 * params.dynamic_range);
    const double c2 = (params.k2 * params.dynamic_range) * (params.k2 * params.dynamic_range);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double mx = mu_x[i];
        const double my = mu_y[i];
        const double var_x = e_xx[i] - mx * mx;
        const double var_y = e_yy[i] - my * my;
        const double cov = e_xy[i] - mx * my;
        const double num = (2.0 * mx * my + c1) * (2.0 * cov + c2);
        const double den = (mx * mx + my * my + c1) * (var_x + var_y + c2);
        total += num / den;
    }
    return total / static_cast<double>(n);
}

QualityScores score(const GrayImage& reference, const GrayImage& test) {
    const double m = mse(reference, test);
    return QualityScores{m, psnr_from_mse(m), ssim(reference, test)};
}

}  // namespace tetra
