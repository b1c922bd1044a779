#include "pwrctv/weights.hpp"

#include <algorithm>
#include <cmath>

#include "pwrctv/errors.hpp"
#include "pwrctv/gradient.hpp"

namespace pwrctv {

namespace {

// Fresh (non-incremental) separable window sums with replicate padding:
// horizontal pass over clamped column offsets, then vertical pass. Keeps each
// output a sum of window-local terms, so rounding stays at the window scale.
Eigen::ArrayXXd window_sums(const Eigen::ArrayXXd& f, int window) {
    const int rows = static_cast<int>(f.rows());
    const int cols = static_cast<int>(f.cols());
    const int h = window / 2;
    Eigen::ArrayXXd rowsum(rows, cols);
#pragma omp parallel for schedule(static)
    for (int j = 0; j < cols; ++j) {
        for (int i = 0; i < rows; ++i) {
            double s = 0.0;
            for (int d = -h; d <= h; ++d) {
                const int jj = std::clamp(j + d, 0, cols - 1);
                s += f(i, jj);
            }
            rowsum(i, j) = s;
        }
    }
    Eigen::ArrayXXd out(rows, cols);
#pragma omp parallel for schedule(static)
    for (int j = 0; j < cols; ++j) {
        for (int i = 0; i < rows; ++i) {
            double s = 0.0;
            for (int d = -h; d <= h; ++d) {
                const int ii = std::clamp(i + d, 0, rows - 1);
                s += rowsum(ii, j);
            }
            out(i, j) = s;
        }
    }
    return out;
}

Eigen::ArrayXXd stage1_base(const Eigen::ArrayXXd& grad_pan, double q) {
    return (1.0 - grad_pan.abs()).pow(q);
}

} // namespace

Eigen::ArrayXXd local_correlation(const Eigen::Ref<const Eigen::ArrayXXd>& a,
                                  const Eigen::Ref<const Eigen::ArrayXXd>& b, int window) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw InputError("local_correlation: shape mismatch");
    if (window < 3 || window % 2 == 0) {
        throw InputError("local_correlation: window must be odd and >= 3, got " + std::to_string(window));
    }

    // Pearson is translation invariant; centering on the global means keeps the
    // windowed moment sums free of large-offset cancellation.
    const double scale_a = a.abs().maxCoeff();
    const double scale_b = b.abs().maxCoeff();
    Eigen::ArrayXXd ac = a - a.mean();
    Eigen::ArrayXXd bc = b - b.mean();

    const Eigen::ArrayXXd sum_a = window_sums(ac, window);
    const Eigen::ArrayXXd sum_b = window_sums(bc, window);
    const Eigen::ArrayXXd sum_aa = window_sums(ac * ac, window);
    const Eigen::ArrayXXd sum_bb = window_sums(bc * bc, window);
    const Eigen::ArrayXXd sum_ab = window_sums(ac * bc, window);

    const double n = static_cast<double>(window) * window;
    const double tiny_a = n * (1e-14 * scale_a) * (1e-14 * scale_a);
    const double tiny_b = n * (1e-14 * scale_b) * (1e-14 * scale_b);

    Eigen::ArrayXXd corr(a.rows(), a.cols());
#pragma omp parallel for schedule(static)
    for (int j = 0; j < corr.cols(); ++j) {
        for (int i = 0; i < corr.rows(); ++i) {
            const double var_a = sum_aa(i, j) - sum_a(i, j) * sum_a(i, j) / n;
            const double var_b = sum_bb(i, j) - sum_b(i, j) * sum_b(i, j) / n;
            if (var_a <= tiny_a || var_b <= tiny_b) {
                corr(i, j) = 0.0;
                continue;
            }
            const double cov = sum_ab(i, j) - sum_a(i, j) * sum_b(i, j) / n;
            corr(i, j) = std::clamp(cov / std::sqrt(var_a * var_b), -1.0, 1.0);
        }
    }
    return corr;
}

WeightField stage1_weights(const PanImage& pan, double q, int rank) {
    if (q <= 0.0) throw InputError("stage1_weights: q must be positive");
    if (rank < 1) throw InputError("stage1_weights: rank must be >= 1");
    const GradientPair gp = gradient(pan.view());

    WeightField w;
    w.stage = 1;
    w.q = q;
    w.wh = HyperCube(pan.rows, pan.cols, rank);
    w.wv = HyperCube(pan.rows, pan.cols, rank);
    const Eigen::ArrayXXd base_h = stage1_base(gp.horizontal, q);
    const Eigen::ArrayXXd base_v = stage1_base(gp.vertical, q);
#pragma omp parallel for schedule(static)
    for (int r = 0; r < rank; ++r) {
        w.wh.band_view(r) = base_h;
        w.wv.band_view(r) = base_v;
    }
    return w;
}

WeightField stage2_weights(const PanImage& pan, const HyperCube& coeffs, double q, int window) {
    if (coeffs.rows != pan.rows || coeffs.cols != pan.cols) {
        throw InputError("stage2_weights: coefficient spatial dims do not match pan image");
    }
    const GradientPair gp = gradient(pan.view());
    const Eigen::ArrayXXd base_h = stage1_base(gp.horizontal, q);
    const Eigen::ArrayXXd base_v = stage1_base(gp.vertical, q);

    WeightField w;
    w.stage = 2;
    w.q = q;
    w.corr_window = window;
    w.wh = HyperCube(coeffs.rows, coeffs.cols, coeffs.bands);
    w.wv = HyperCube(coeffs.rows, coeffs.cols, coeffs.bands);

    Eigen::ArrayXXd grad_slice(coeffs.rows, coeffs.cols);
    for (int r = 0; r < coeffs.bands; ++r) {
        gradient_h_into(coeffs.band(r), coeffs.rows, coeffs.cols, grad_slice.data());
        w.wh.band_view(r) = local_correlation(grad_slice, gp.horizontal, window).abs() * base_h;
        gradient_v_into(coeffs.band(r), coeffs.rows, coeffs.cols, grad_slice.data());
        w.wv.band_view(r) = local_correlation(grad_slice, gp.vertical, window).abs() * base_v;
    }
    return w;
}

WeightField unit_weights(int rows, int cols, int rank) {
    WeightField w;
    w.stage = 1;
    w.wh = HyperCube(rows, cols, rank, 1.0);
    w.wv = HyperCube(rows, cols, rank, 1.0);
    return w;
}

} // namespace pwrctv
