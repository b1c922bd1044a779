#include "pwrctv/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "pwrctv/errors.hpp"

namespace pwrctv {

namespace {

void require_same_shape(const HyperCube& x, const HyperCube& ref, const char* op) {
    if (!x.same_shape(ref)) throw InputError(std::string(op) + ": cube shapes differ");
}

std::vector<double> band_mse(const HyperCube& x, const HyperCube& ref) {
    std::vector<double> mse(x.bands, 0.0);
#pragma omp parallel for schedule(static)
    for (int b = 0; b < x.bands; ++b) {
        const double* p = x.band(b);
        const double* q = ref.band(b);
        double s = 0.0;
        for (std::size_t k = 0; k < x.spatial_size(); ++k) {
            const double d = p[k] - q[k];
            s += d * d;
        }
        mse[b] = s / static_cast<double>(x.spatial_size());
    }
    return mse;
}

std::vector<double> psnr_per_band(const HyperCube& x, const HyperCube& ref) {
    const std::vector<double> mse = band_mse(x, ref);
    std::vector<double> out(mse.size());
    for (std::size_t b = 0; b < mse.size(); ++b) {
        out[b] = mse[b] > 0.0 ? 10.0 * std::log10(1.0 / mse[b]) : std::numeric_limits<double>::infinity();
    }
    return out;
}

constexpr int kSsimWindow = 11;
constexpr double kSsimSigma = 1.5;
constexpr double kSsimC1 = 0.01 * 0.01;
constexpr double kSsimC2 = 0.03 * 0.03;

std::vector<double> ssim_kernel() {
    std::vector<double> g(kSsimWindow);
    double sum = 0.0;
    for (int k = 0; k < kSsimWindow; ++k) {
        const double d = k - (kSsimWindow - 1) / 2.0;
        g[k] = std::exp(-d * d / (2.0 * kSsimSigma * kSsimSigma));
        sum += g[k];
    }
    for (double& v : g) v /= sum;
    return g;
}

// Separable Gaussian filtering restricted to fully interior windows.
Eigen::ArrayXXd gauss_valid(const Eigen::ArrayXXd& f, const std::vector<double>& g) {
    const int rows = static_cast<int>(f.rows());
    const int cols = static_cast<int>(f.cols());
    const int w = static_cast<int>(g.size());
    Eigen::ArrayXXd tmp(rows, cols - w + 1);
    for (int j = 0; j < cols - w + 1; ++j) {
        for (int i = 0; i < rows; ++i) {
            double s = 0.0;
            for (int k = 0; k < w; ++k) s += g[k] * f(i, j + k);
            tmp(i, j) = s;
        }
    }
    Eigen::ArrayXXd out(rows - w + 1, cols - w + 1);
    for (int j = 0; j < out.cols(); ++j) {
        for (int i = 0; i < out.rows(); ++i) {
            double s = 0.0;
            for (int k = 0; k < w; ++k) s += g[k] * tmp(i + k, j);
            out(i, j) = s;
        }
    }
    return out;
}

double ssim_band(const Eigen::ArrayXXd& x, const Eigen::ArrayXXd& y, const std::vector<double>& g) {
    const Eigen::ArrayXXd mu_x = gauss_valid(x, g);
    const Eigen::ArrayXXd mu_y = gauss_valid(y, g);
    const Eigen::ArrayXXd sxx = gauss_valid(x * x, g) - mu_x * mu_x;
    const Eigen::ArrayXXd syy = gauss_valid(y * y, g) - mu_y * mu_y;
    const Eigen::ArrayXXd sxy = gauss_valid(x * y, g) - mu_x * mu_y;
    const Eigen::ArrayXXd num = (2.0 * mu_x * mu_y + kSsimC1) * (2.0 * sxy + kSsimC2);
    const Eigen::ArrayXXd den = (mu_x * mu_x + mu_y * mu_y + kSsimC1) * (sxx + syy + kSsimC2);
    return (num / den).mean();
}

std::vector<double> ssim_per_band(const HyperCube& x, const HyperCube& ref) {
    if (x.rows < kSsimWindow || x.cols < kSsimWindow) {
        throw InputError("ssim: image smaller than the 11x11 window");
    }
    const std::vector<double> g = ssim_kernel();
    std::vector<double> out(x.bands);
#pragma omp parallel for schedule(static)
    for (int b = 0; b < x.bands; ++b) {
        out[b] = ssim_band(x.band_view(b), ref.band_view(b), g);
    }
    return out;
}

} // namespace

double psnr(const HyperCube& x, const HyperCube& ref) {
    require_same_shape(x, ref, "psnr");
    const std::vector<double> pb = psnr_per_band(x, ref);
    double s = 0.0;
    for (double v : pb) s += v;
    return s / static_cast<double>(pb.size());
}

double ssim(const HyperCube& x, const HyperCube& ref) {
    require_same_shape(x, ref, "ssim");
    const std::vector<double> sb = ssim_per_band(x, ref);
    double s = 0.0;
    for (double v : sb) s += v;
    return s / static_cast<double>(sb.size());
}

double ergas(const HyperCube& x, const HyperCube& ref) {
    require_same_shape(x, ref, "ergas");
    const std::vector<double> mse = band_mse(x, ref);
    double acc = 0.0;
    for (int b = 0; b < ref.bands; ++b) {
        double mean = 0.0;
        const double* q = ref.band(b);
        for (std::size_t k = 0; k < ref.spatial_size(); ++k) mean += q[k];
        mean /= static_cast<double>(ref.spatial_size());
        if (mean == 0.0) throw NumericalError("ergas: reference band " + std::to_string(b) + " has zero mean");
        acc += mse[b] / (mean * mean);
    }
    return 100.0 * std::sqrt(acc / static_cast<double>(ref.bands));
}

double sam(const HyperCube& x, const HyperCube& ref, long long* zero_pixels) {
    require_same_shape(x, ref, "sam");
    const std::size_t npix = x.spatial_size();
    const int bands = x.bands;
    // Per-column partials keep the reduction order independent of threading.
    std::vector<double> col_sum(x.cols, 0.0);
    std::vector<long long> col_skip(x.cols, 0);
#pragma omp parallel for schedule(static)
    for (int j = 0; j < x.cols; ++j) {
        double s = 0.0;
        long long skipped = 0;
        for (int i = 0; i < x.rows; ++i) {
            const std::size_t base = static_cast<std::size_t>(j) * x.rows + i;
            double dot = 0.0, nx = 0.0, ny = 0.0;
            for (int b = 0; b < bands; ++b) {
                const double vx = x.data[base + static_cast<std::size_t>(b) * npix];
                const double vy = ref.data[base + static_cast<std::size_t>(b) * npix];
                dot += vx * vy;
                nx += vx * vx;
                ny += vy * vy;
            }
            if (nx == 0.0 || ny == 0.0) {
                ++skipped;
                continue;
            }
            const double c = std::clamp(dot / std::sqrt(nx * ny), -1.0, 1.0);
            s += std::acos(c);
        }
        col_sum[j] = s;
        col_skip[j] = skipped;
    }
    double total = 0.0;
    long long skipped = 0;
    for (int j = 0; j < x.cols; ++j) {
        total += col_sum[j];
        skipped += col_skip[j];
    }
    if (zero_pixels) *zero_pixels = skipped;
    const long long counted = static_cast<long long>(npix) - skipped;
    if (counted == 0) return 0.0;
    return total / static_cast<double>(counted) * (180.0 / 3.14159265358979323846);
}

MetricsReport evaluate(const HyperCube& x, const HyperCube& ref) {
    require_same_shape(x, ref, "evaluate");
    MetricsReport r;
    r.psnr_band = psnr_per_band(x, ref);
    double s = 0.0;
    for (double v : r.psnr_band) s += v;
    r.psnr = s / static_cast<double>(r.psnr_band.size());
    r.ssim_band = ssim_per_band(x, ref);
    s = 0.0;
    for (double v : r.ssim_band) s += v;
    r.ssim = s / static_cast<double>(r.ssim_band.size());
    r.ergas = ergas(x, ref);
    r.sam = sam(x, ref, &r.sam_zero_pixels);
    return r;
}

std::string metrics_table(const MetricsReport& report) {
    char buf[256];
    auto fmt = [](double v, char* out, std::size_t cap) {
        if (std::isinf(v)) std::snprintf(out, cap, "%11s", "inf");
        else std::snprintf(out, cap, "%11.4f", v);
    };
    char c1[32], c2[32], c3[32], c4[32];
    fmt(report.psnr, c1, sizeof c1);
    fmt(report.ssim, c2, sizeof c2);
    fmt(report.ergas, c3, sizeof c3);
    fmt(report.sam, c4, sizeof c4);
    std::snprintf(buf, sizeof buf, "%11s%11s%11s%11s\n%s%s%s%s\n", "PSNR", "SSIM", "ERGAS", "SAM", c1, c2, c3, c4);
    return buf;
}

} // namespace pwrctv
