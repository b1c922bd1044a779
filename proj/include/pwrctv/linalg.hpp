#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "pwrctv/cube.hpp"
#include "pwrctv/fft2d.hpp"

namespace pwrctv {

// Low-rank factorization X = U Vt: spatial coefficients U (rows x cols x rank)
// and an orthonormal spectral basis V (bands x rank).
struct FactorPair {
    HyperCube coeffs;
    Eigen::MatrixXd basis;
    int rank = 0;
};

struct TruncatedSvd {
    FactorPair factor;
    double spectral_norm = 0.0; // largest singular value of the input matrix
};

// Rank-R initialization of (U, V) from the unfolded cube (rows*cols x bands).
// V holds the top-R right singular vectors, U = Y V. Computed through the
// bands x bands Gram matrix, which is cheap whenever bands << rows*cols.
TruncatedSvd truncated_svd_init(const Eigen::Ref<const Eigen::MatrixXd>& Y, int rows, int cols, int rank);

inline double soft_threshold(double x, double alpha) {
    const double m = std::abs(x) - alpha;
    return m > 0.0 ? (x < 0.0 ? -m : m) : 0.0;
}
inline double weighted_soft_threshold(double x, double alpha, double w) {
    const double m = std::abs(x) - alpha * w;
    return m > 0.0 ? (x < 0.0 ? -m : m) : 0.0;
}

// Elementwise array forms. alpha must be >= 0; weights must be nonnegative and
// shaped like x. out may alias x.
void soft_threshold(std::span<const double> x, double alpha, std::span<double> out);
void weighted_soft_threshold(std::span<const double> x, double alpha, std::span<const double> w,
                             std::span<double> out);

// Half spectra of the two difference kernels on a fixed grid, plus the
// combined magnitude term |Kh|^2 + |Kv|^2 used in the normal-equation solve.
struct GradKernelSpectra {
    std::vector<std::complex<double>> kh;
    std::vector<std::complex<double>> kv;
    std::vector<double> magnitude;

    explicit GradKernelSpectra(const Fft2D& fft);
};

// Per-slice FFT solve of the coupled normal equations
//   (mu I + mu (Dh' Dh + Dv' Dv)) u = rhs + Dh'(mu fh - gh) + Dv'(mu fv - gv),
// where Dh, Dv are the circulant difference operators. All tensors share the
// shape rows x cols x rank; slices are solved in parallel.
void solve_u(const HyperCube& rhs, const HyperCube& fh, const HyperCube& fv, const HyperCube& gh,
             const HyperCube& gv, double mu, const Fft2D& fft, const GradKernelSpectra& spectra,
             HyperCube& out);

// Orthonormal factor closest to the data in Frobenius norm: V = B D' from the
// SVD of Q'U. A numerically zero Q'U cannot orient V; the previous basis is
// returned and *degenerate set when a fallback is supplied, otherwise throws.
Eigen::MatrixXd procrustes_v(const Eigen::Ref<const Eigen::MatrixXd>& Q,
                             const Eigen::Ref<const Eigen::MatrixXd>& U,
                             const Eigen::MatrixXd* previous = nullptr, bool* degenerate = nullptr);

} // namespace pwrctv
