#pragma once

#include <Eigen/Dense>

#include "pwrctv/cube.hpp"

namespace pwrctv {

// Forward-difference gradients with circular wrap at the last row/column.
// horizontal differentiates along the column index, vertical along the row index.
struct GradientPair {
    Eigen::ArrayXXd horizontal;
    Eigen::ArrayXXd vertical;
};

GradientPair gradient(const Eigen::Ref<const Eigen::ArrayXXd>& image);

// Adjoint of gradient: <gradient(x), g> == <x, divergence(g)> for all x, g.
Eigen::ArrayXXd divergence(const GradientPair& g);

// In-place variants used by the solver hot path (out must be preallocated).
void gradient_h_into(const double* field, int rows, int cols, double* out);
void gradient_v_into(const double* field, int rows, int cols, double* out);
void divergence_into(const double* gh, const double* gv, int rows, int cols, double* out);

// Per-slice gradients of a tensor, written into preallocated tensors of the
// same shape. Slices are processed in parallel.
void gradient_h_cube(const HyperCube& src, HyperCube& out);
void gradient_v_cube(const HyperCube& src, HyperCube& out);

// Difference kernel embedded in a rows x cols zero field: (0,0) = -1 and the
// circularly wrapped neighbor = +1, so its 2-D FFT diagonalizes the operator.
Eigen::ArrayXXd gradient_kernel_h(int rows, int cols);
Eigen::ArrayXXd gradient_kernel_v(int rows, int cols);

} // namespace pwrctv
