#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace pwrctv {

// Real 2-D FFT of column-major rows x cols fields, wrapping FFTW r2c/c2r plans.
// Spectra use the half-spectrum layout ((rows/2+1) x cols, column-major); all
// fields of one size share the layout, so elementwise spectral arithmetic is
// consistent. Plans are created once in the constructor (the FFTW planner is
// not thread-safe); forward/inverse use the new-array execute interface and are
// safe to call concurrently on distinct buffers.
class Fft2D {
public:
    Fft2D(int rows, int cols);
    ~Fft2D();

    Fft2D(const Fft2D&) = delete;
    Fft2D& operator=(const Fft2D&) = delete;

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    // Number of complex coefficients in a half spectrum.
    std::size_t spectrum_size() const { return static_cast<std::size_t>(rows_ / 2 + 1) * cols_; }

    // out must hold spectrum_size() complex values; in is not modified.
    void forward(const double* in, std::complex<double>* out) const;
    // Unnormalized-inverse scaled by 1/(rows*cols); clobbers in (FFTW c2r).
    void inverse(std::complex<double>* in, double* out) const;

    // Convenience: full round trip on Eigen arrays (test and tooling use).
    std::vector<std::complex<double>> forward(const Eigen::Ref<const Eigen::ArrayXXd>& field) const;

private:
    int rows_;
    int cols_;
    void* plan_fwd_; // fftw_plan
    void* plan_inv_;
};

} // namespace pwrctv
