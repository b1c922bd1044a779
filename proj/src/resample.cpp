#include "pwrctv/resample.hpp"

#include <algorithm>
#include <cmath>

namespace pwrctv {

PanImage normalize_pan(const Eigen::Ref<const Eigen::ArrayXXd>& field) {
    if (!field.allFinite()) throw InputError("pan image contains non-finite values");
    PanImage out(static_cast<int>(field.rows()), static_cast<int>(field.cols()));
    const double lo = field.minCoeff();
    const double hi = field.maxCoeff();
    if (hi <= lo) {
        out.degenerate = true; // constant image: contrast carries no information
        return out;
    }
    out.view() = (field - lo) / (hi - lo);
    return out;
}

PanImage pan_resample(const Eigen::Ref<const Eigen::ArrayXXd>& pan, int target_rows, int target_cols) {
    const int sr = static_cast<int>(pan.rows());
    const int sc = static_cast<int>(pan.cols());
    if (target_rows < 1 || target_cols < 1) throw InputError("pan_resample: target dims must be >= 1");
    if (target_rows > sr || target_cols > sc) {
        throw InputError("pan_resample: target " + std::to_string(target_rows) + "x" +
                         std::to_string(target_cols) + " exceeds source " + std::to_string(sr) + "x" +
                         std::to_string(sc));
    }

    if (sr == target_rows && sc == target_cols) return normalize_pan(pan);

    Eigen::ArrayXXd res(target_rows, target_cols);
    if (sr % target_rows == 0 && sc % target_cols == 0) {
        const int kr = sr / target_rows;
        const int kc = sc / target_cols;
        for (int j = 0; j < target_cols; ++j) {
            for (int i = 0; i < target_rows; ++i) {
                res(i, j) = pan.block(i * kr, j * kc, kr, kc).mean();
            }
        }
    } else {
        // Align-corners bilinear: endpoints map onto endpoints.
        const double fr = target_rows > 1 ? static_cast<double>(sr - 1) / (target_rows - 1) : 0.0;
        const double fc = target_cols > 1 ? static_cast<double>(sc - 1) / (target_cols - 1) : 0.0;
        for (int j = 0; j < target_cols; ++j) {
            const double y = j * fc;
            const int j0 = std::clamp(static_cast<int>(std::floor(y)), 0, sc - 1);
            const int j1 = std::min(j0 + 1, sc - 1);
            const double wy = y - j0;
            for (int i = 0; i < target_rows; ++i) {
                const double x = i * fr;
                const int i0 = std::clamp(static_cast<int>(std::floor(x)), 0, sr - 1);
                const int i1 = std::min(i0 + 1, sr - 1);
                const double wx = x - i0;
                res(i, j) = (1 - wx) * (1 - wy) * pan(i0, j0) + wx * (1 - wy) * pan(i1, j0) +
                            (1 - wx) * wy * pan(i0, j1) + wx * wy * pan(i1, j1);
            }
        }
    }
    return normalize_pan(res);
}

} // namespace pwrctv
