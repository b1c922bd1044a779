#pragma once

#include <string>
#include <vector>

#include "pwrctv/cube.hpp"

namespace pwrctv {

// Full-reference quality scores. psnr/ssim are band means, sam is the mean
// per-pixel spectral angle in degrees, ergas is reference-mean normalized
// (and therefore not symmetric in its arguments). Data range is fixed at 1.
struct MetricsReport {
    double psnr = 0.0;
    double ssim = 0.0;
    double ergas = 0.0;
    double sam = 0.0;
    std::vector<double> psnr_band;
    std::vector<double> ssim_band;
    long long sam_zero_pixels = 0; // zero-norm pixels excluded from the mean
};

double psnr(const HyperCube& x, const HyperCube& ref);
double ssim(const HyperCube& x, const HyperCube& ref);
double ergas(const HyperCube& x, const HyperCube& ref);
double sam(const HyperCube& x, const HyperCube& ref, long long* zero_pixels = nullptr);

MetricsReport evaluate(const HyperCube& x, const HyperCube& ref);

// Fixed-column table, header plus one value row (PSNR SSIM ERGAS SAM), each
// field 11 characters wide with 4 decimals.
std::string metrics_table(const MetricsReport& report);

} // namespace pwrctv
