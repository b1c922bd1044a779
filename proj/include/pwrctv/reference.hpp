#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "pwrctv/cube.hpp"

namespace pwrctv::ref {

// Straight-line serial counterparts of the parallel kernels plus the dense
// oracles the test suites check against. Built into a separate library that
// only the tests and the kernel benchmark link.

void gradient_h(const double* field, int rows, int cols, double* out);
void gradient_v(const double* field, int rows, int cols, double* out);
void divergence(const double* gh, const double* gv, int rows, int cols, double* out);

void soft_threshold(const double* x, double alpha, std::size_t n, double* out);
void weighted_soft_threshold(const double* x, double alpha, const double* w, std::size_t n, double* out);

// Windowed Pearson correlation evaluated independently per pixel with the
// textbook two-pass formula (replicate padding, zero-variance windows -> 0).
Eigen::ArrayXXd local_correlation(const Eigen::Ref<const Eigen::ArrayXXd>& a,
                                  const Eigen::Ref<const Eigen::ArrayXXd>& b, int window);

double psnr(const HyperCube& x, const HyperCube& refcube);
double sam(const HyperCube& x, const HyperCube& refcube);

// Per-pixel sliding-window SSIM of one band, Gaussian weighted, valid region.
double ssim_band(const Eigen::Ref<const Eigen::ArrayXXd>& x, const Eigen::Ref<const Eigen::ArrayXXd>& y);

// Explicit circulant forward-difference matrices on vectorized column-major
// fields; rows of the matrix follow the same element order as the fields.
Eigen::MatrixXd difference_matrix_h(int rows, int cols);
Eigen::MatrixXd difference_matrix_v(int rows, int cols);

// Dense assembly and LU solve of the per-slice normal equations
// (mu I + mu (Dh'Dh + Dv'Dv)) u = rhs + Dh'(mu fh - gh) + Dv'(mu fv - gv).
Eigen::VectorXd dense_solve_u_slice(const Eigen::VectorXd& rhs, const Eigen::VectorXd& fh,
                                    const Eigen::VectorXd& fv, const Eigen::VectorXd& gh,
                                    const Eigen::VectorXd& gv, double mu, int rows, int cols);

} // namespace pwrctv::ref
