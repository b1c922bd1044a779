#pragma once

#include <Eigen/Dense>

#include "pwrctv/cube.hpp"

namespace pwrctv {

// Per-direction, per-slice TV weights in [0,1]. Stage 1 derives them from the
// guidance gradients alone (all slices identical); stage 2 additionally scales
// each slice by the magnitude of its local gradient correlation with the
// guidance image.
struct WeightField {
    HyperCube wh;
    HyperCube wv;
    int stage = 1;
    double q = 5.0;
    int corr_window = 9;
};

// W_j = (1 - |grad_j P|)^q, replicated across all `rank` slices.
WeightField stage1_weights(const PanImage& pan, double q, int rank);

// Windowed Pearson correlation of two equally shaped fields, replicate-padded;
// windows with (numerically) zero variance on either side map to 0.
Eigen::ArrayXXd local_correlation(const Eigen::Ref<const Eigen::ArrayXXd>& a,
                                  const Eigen::Ref<const Eigen::ArrayXXd>& b, int window);

// W_j(:,:,i) = |corr(grad_j U_i, grad_j P)| .* (1 - |grad_j P|)^q.
WeightField stage2_weights(const PanImage& pan, const HyperCube& coeffs, double q, int window);

// Unit weights of the requested shape; the guidance-free reduction.
WeightField unit_weights(int rows, int cols, int rank);

} // namespace pwrctv
