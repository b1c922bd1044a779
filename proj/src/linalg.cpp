#include "pwrctv/linalg.hpp"

#include <cmath>

#include "pwrctv/errors.hpp"
#include "pwrctv/gradient.hpp"

namespace pwrctv {

TruncatedSvd truncated_svd_init(const Eigen::Ref<const Eigen::MatrixXd>& Y, int rows, int cols, int rank) {
    const Eigen::Index mn = Y.rows();
    const Eigen::Index bands = Y.cols();
    if (mn != static_cast<Eigen::Index>(rows) * cols) {
        throw InputError("truncated_svd_init: matrix rows do not match rows*cols");
    }
    if (rank < 1 || rank > std::min(mn, bands)) {
        throw InputError("truncated_svd_init: rank " + std::to_string(rank) + " out of range for " +
                         std::to_string(mn) + "x" + std::to_string(bands) + " matrix");
    }

    const Eigen::MatrixXd gram = Y.transpose() * Y;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
    if (eig.info() != Eigen::Success) throw NumericalError("truncated_svd_init: eigendecomposition failed");

    // Eigenvalues come back ascending; take the top `rank` in descending order.
    Eigen::MatrixXd v(bands, rank);
    for (int r = 0; r < rank; ++r) v.col(r) = eig.eigenvectors().col(bands - 1 - r);

    TruncatedSvd out;
    out.spectral_norm = std::sqrt(std::max(eig.eigenvalues()(bands - 1), 0.0));
    out.factor.rank = rank;
    out.factor.basis = std::move(v);
    out.factor.coeffs = fold3(Y * out.factor.basis, rows, cols);
    return out;
}

void soft_threshold(std::span<const double> x, double alpha, std::span<double> out) {
    if (alpha < 0.0) throw InputError("soft_threshold: negative threshold");
    if (x.size() != out.size()) throw InputError("soft_threshold: size mismatch");
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(x.size()); ++k) {
        out[k] = soft_threshold(x[k], alpha);
    }
}

void weighted_soft_threshold(std::span<const double> x, double alpha, std::span<const double> w,
                             std::span<double> out) {
    if (alpha < 0.0) throw InputError("weighted_soft_threshold: negative threshold");
    if (x.size() != w.size() || x.size() != out.size()) {
        throw InputError("weighted_soft_threshold: size mismatch");
    }
    bool bad = false;
#pragma omp parallel for reduction(|| : bad) schedule(static)
    for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(x.size()); ++k) {
        bad = bad || (w[k] < 0.0);
    }
    if (bad) throw InputError("weighted_soft_threshold: negative weight");
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(x.size()); ++k) {
        out[k] = weighted_soft_threshold(x[k], alpha, w[k]);
    }
}

GradKernelSpectra::GradKernelSpectra(const Fft2D& fft) {
    kh = fft.forward(gradient_kernel_h(fft.rows(), fft.cols()));
    kv = fft.forward(gradient_kernel_v(fft.rows(), fft.cols()));
    magnitude.resize(kh.size());
    for (std::size_t k = 0; k < kh.size(); ++k) magnitude[k] = std::norm(kh[k]) + std::norm(kv[k]);
}

void solve_u(const HyperCube& rhs, const HyperCube& fh, const HyperCube& fv, const HyperCube& gh,
             const HyperCube& gv, double mu, const Fft2D& fft, const GradKernelSpectra& spectra,
             HyperCube& out) {
    if (mu <= 0.0) throw InputError("solve_u: mu must be positive");
    if (!rhs.same_shape(fh) || !rhs.same_shape(fv) || !rhs.same_shape(gh) || !rhs.same_shape(gv) ||
        !rhs.same_shape(out)) {
        throw InputError("solve_u: tensor shapes differ");
    }
    if (rhs.rows != fft.rows() || rhs.cols != fft.cols()) throw InputError("solve_u: FFT grid mismatch");

    const std::size_t n = rhs.spatial_size();
    const std::size_t ns = fft.spectrum_size();

#pragma omp parallel for schedule(static)
    for (int s = 0; s < rhs.bands; ++s) {
        std::vector<double> real(n);
        std::vector<std::complex<double>> accum(ns), tmp(ns);

        fft.forward(rhs.band(s), accum.data());

        const double* pfh = fh.band(s);
        const double* pgh = gh.band(s);
        for (std::size_t k = 0; k < n; ++k) real[k] = mu * pfh[k] - pgh[k];
        fft.forward(real.data(), tmp.data());
        for (std::size_t k = 0; k < ns; ++k) accum[k] += std::conj(spectra.kh[k]) * tmp[k];

        const double* pfv = fv.band(s);
        const double* pgv = gv.band(s);
        for (std::size_t k = 0; k < n; ++k) real[k] = mu * pfv[k] - pgv[k];
        fft.forward(real.data(), tmp.data());
        for (std::size_t k = 0; k < ns; ++k) accum[k] += std::conj(spectra.kv[k]) * tmp[k];

        for (std::size_t k = 0; k < ns; ++k) accum[k] /= mu + mu * spectra.magnitude[k];
        fft.inverse(accum.data(), out.band(s));
    }
}

Eigen::MatrixXd procrustes_v(const Eigen::Ref<const Eigen::MatrixXd>& Q,
                             const Eigen::Ref<const Eigen::MatrixXd>& U,
                             const Eigen::MatrixXd* previous, bool* degenerate) {
    if (Q.rows() != U.rows()) throw InputError("procrustes_v: row counts differ");
    if (degenerate) *degenerate = false;
    const Eigen::MatrixXd m = Q.transpose() * U;
    if (m.norm() == 0.0) {
        if (previous) {
            if (degenerate) *degenerate = true;
            return *previous;
        }
        throw NumericalError("procrustes_v: Q'U is identically zero");
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return svd.matrixU() * svd.matrixV().transpose();
}

} // namespace pwrctv
