#include "pwrctv/fft2d.hpp"

#include <mutex>

#include <fftw3.h>

#include "pwrctv/errors.hpp"

namespace pwrctv {

namespace {
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
} // namespace

Fft2D::Fft2D(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 1 || cols < 1) throw InputError("Fft2D: dimensions must be >= 1");
    // Column-major (rows, cols) equals row-major (cols, rows), which is FFTW's
    // native order, so the transform is planned as n0 = cols, n1 = rows.
    // FFTW_UNALIGNED lets the new-array execute run on plain std::vector storage.
    std::vector<double> real(static_cast<std::size_t>(rows) * cols, 0.0);
    std::vector<std::complex<double>> spec(spectrum_size());
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan_fwd_ = fftw_plan_dft_r2c_2d(cols, rows, real.data(),
                                     reinterpret_cast<fftw_complex*>(spec.data()),
                                     FFTW_ESTIMATE | FFTW_UNALIGNED);
    plan_inv_ = fftw_plan_dft_c2r_2d(cols, rows, reinterpret_cast<fftw_complex*>(spec.data()),
                                     real.data(), FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!plan_fwd_ || !plan_inv_) throw NumericalError("Fft2D: FFTW planning failed");
}

Fft2D::~Fft2D() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(plan_inv_));
}

void Fft2D::forward(const double* in, std::complex<double>* out) const {
    fftw_execute_dft_r2c(static_cast<fftw_plan>(plan_fwd_), const_cast<double*>(in),
                         reinterpret_cast<fftw_complex*>(out));
}

void Fft2D::inverse(std::complex<double>* in, double* out) const {
    fftw_execute_dft_c2r(static_cast<fftw_plan>(plan_inv_), reinterpret_cast<fftw_complex*>(in), out);
    const double scale = 1.0 / (static_cast<double>(rows_) * cols_);
    const std::size_t n = static_cast<std::size_t>(rows_) * cols_;
    for (std::size_t k = 0; k < n; ++k) out[k] *= scale;
}

std::vector<std::complex<double>> Fft2D::forward(const Eigen::Ref<const Eigen::ArrayXXd>& field) const {
    if (field.rows() != rows_ || field.cols() != cols_) throw InputError("Fft2D: field shape mismatch");
    Eigen::ArrayXXd tmp = field; // force contiguous
    std::vector<std::complex<double>> spec(spectrum_size());
    forward(tmp.data(), spec.data());
    return spec;
}

} // namespace pwrctv
