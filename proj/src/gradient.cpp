#include "pwrctv/gradient.hpp"

#include <cmath>

namespace pwrctv {

void gradient_h_into(const double* field, int rows, int cols, double* out) {
    for (int j = 0; j < cols; ++j) {
        const int jn = (j + 1 == cols) ? 0 : j + 1;
        const double* cur = field + static_cast<std::size_t>(j) * rows;
        const double* nxt = field + static_cast<std::size_t>(jn) * rows;
        double* o = out + static_cast<std::size_t>(j) * rows;
        for (int i = 0; i < rows; ++i) o[i] = nxt[i] - cur[i];
    }
}

void gradient_v_into(const double* field, int rows, int cols, double* out) {
    for (int j = 0; j < cols; ++j) {
        const double* c = field + static_cast<std::size_t>(j) * rows;
        double* o = out + static_cast<std::size_t>(j) * rows;
        for (int i = 0; i + 1 < rows; ++i) o[i] = c[i + 1] - c[i];
        o[rows - 1] = c[0] - c[rows - 1];
    }
}

void divergence_into(const double* gh, const double* gv, int rows, int cols, double* out) {
    // Adjoint of the forward differences: negated backward difference per direction.
    for (int j = 0; j < cols; ++j) {
        const int jp = (j == 0) ? cols - 1 : j - 1;
        const double* h = gh + static_cast<std::size_t>(j) * rows;
        const double* hp = gh + static_cast<std::size_t>(jp) * rows;
        const double* v = gv + static_cast<std::size_t>(j) * rows;
        double* o = out + static_cast<std::size_t>(j) * rows;
        o[0] = (hp[0] - h[0]) + (v[rows - 1] - v[0]);
        for (int i = 1; i < rows; ++i) o[i] = (hp[i] - h[i]) + (v[i - 1] - v[i]);
    }
}

GradientPair gradient(const Eigen::Ref<const Eigen::ArrayXXd>& image) {
    if (!image.allFinite()) throw InputError("gradient: input contains non-finite values");
    GradientPair g;
    g.horizontal.resize(image.rows(), image.cols());
    g.vertical.resize(image.rows(), image.cols());
    // Ref may be a non-contiguous block; evaluate once if so.
    Eigen::ArrayXXd tmp;
    const double* src = image.data();
    if (image.outerStride() != image.rows()) {
        tmp = image;
        src = tmp.data();
    }
    gradient_h_into(src, static_cast<int>(image.rows()), static_cast<int>(image.cols()), g.horizontal.data());
    gradient_v_into(src, static_cast<int>(image.rows()), static_cast<int>(image.cols()), g.vertical.data());
    return g;
}

Eigen::ArrayXXd divergence(const GradientPair& g) {
    if (g.horizontal.rows() != g.vertical.rows() || g.horizontal.cols() != g.vertical.cols()) {
        throw InputError("divergence: component shapes differ");
    }
    Eigen::ArrayXXd out(g.horizontal.rows(), g.horizontal.cols());
    divergence_into(g.horizontal.data(), g.vertical.data(), static_cast<int>(out.rows()),
                    static_cast<int>(out.cols()), out.data());
    return out;
}

void gradient_h_cube(const HyperCube& src, HyperCube& out) {
#pragma omp parallel for schedule(static)
    for (int b = 0; b < src.bands; ++b) {
        gradient_h_into(src.band(b), src.rows, src.cols, out.band(b));
    }
}

void gradient_v_cube(const HyperCube& src, HyperCube& out) {
#pragma omp parallel for schedule(static)
    for (int b = 0; b < src.bands; ++b) {
        gradient_v_into(src.band(b), src.rows, src.cols, out.band(b));
    }
}

Eigen::ArrayXXd gradient_kernel_h(int rows, int cols) {
    Eigen::ArrayXXd k = Eigen::ArrayXXd::Zero(rows, cols);
    k(0, 0) = -1.0;
    k(0, cols - 1) += 1.0; // cols == 1 collapses onto (0,0)
    return k;
}

Eigen::ArrayXXd gradient_kernel_v(int rows, int cols) {
    Eigen::ArrayXXd k = Eigen::ArrayXXd::Zero(rows, cols);
    k(0, 0) = -1.0;
    k(rows - 1, 0) += 1.0;
    return k;
}

} // namespace pwrctv
