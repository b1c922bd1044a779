#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "pwrctv/errors.hpp"

namespace pwrctv {

// 3-D image tensor, rows x cols x slices. Storage is slice-sequential with
// column-major spatial order: element (i, j, k) lives at k*rows*cols + j*rows + i.
// The mode-3 unfolding (rows*cols x slices, one slice per matrix column) is then
// a direct view of the buffer, and the on-disk payload uses the same element order.
// Carries hyperspectral cubes (slices = bands) as well as coefficient and
// multiplier stacks (slices = rank).
struct HyperCube {
    int rows = 0;
    int cols = 0;
    int bands = 0;
    std::vector<double> data;

    HyperCube() = default;
    HyperCube(int r, int c, int b, double fill = 0.0);

    std::size_t size() const { return data.size(); }
    std::size_t spatial_size() const { return static_cast<std::size_t>(rows) * cols; }

    std::size_t index(int i, int j, int b) const {
        return static_cast<std::size_t>(b) * spatial_size() + static_cast<std::size_t>(j) * rows + i;
    }
    double& at(int i, int j, int b) { return data[index(i, j, b)]; }
    double at(int i, int j, int b) const { return data[index(i, j, b)]; }

    double* band(int b) { return data.data() + static_cast<std::size_t>(b) * spatial_size(); }
    const double* band(int b) const { return data.data() + static_cast<std::size_t>(b) * spatial_size(); }

    // Column-major rows x cols view of one slice.
    Eigen::Map<Eigen::ArrayXXd> band_view(int b) {
        return Eigen::Map<Eigen::ArrayXXd>(band(b), rows, cols);
    }
    Eigen::Map<const Eigen::ArrayXXd> band_view(int b) const {
        return Eigen::Map<const Eigen::ArrayXXd>(band(b), rows, cols);
    }

    bool all_finite() const;
    bool same_shape(const HyperCube& other) const {
        return rows == other.rows && cols == other.cols && bands == other.bands;
    }
};

// Mode-3 unfolding as a zero-copy matrix view, rows*cols x bands.
inline Eigen::Map<Eigen::MatrixXd> unfold3(HyperCube& cube) {
    return Eigen::Map<Eigen::MatrixXd>(cube.data.data(), cube.spatial_size(), cube.bands);
}
inline Eigen::Map<const Eigen::MatrixXd> unfold3(const HyperCube& cube) {
    return Eigen::Map<const Eigen::MatrixXd>(cube.data.data(), cube.spatial_size(), cube.bands);
}

// Refold a rows*cols x k matrix into a tensor. Throws on size mismatch.
HyperCube fold3(const Eigen::Ref<const Eigen::MatrixXd>& mat, int rows, int cols);

// Single-band guidance image on a cube's spatial grid, values in [0,1].
// `degenerate` marks a constant source whose normalization carried no contrast.
struct PanImage {
    int rows = 0;
    int cols = 0;
    std::vector<double> data;
    bool degenerate = false;

    PanImage() = default;
    PanImage(int r, int c, double fill = 0.0)
        : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, fill) {}

    Eigen::Map<Eigen::ArrayXXd> view() {
        return Eigen::Map<Eigen::ArrayXXd>(data.data(), rows, cols);
    }
    Eigen::Map<const Eigen::ArrayXXd> view() const {
        return Eigen::Map<const Eigen::ArrayXXd>(data.data(), rows, cols);
    }
};

// Deterministic sum of per-band partial sums: each band is reduced serially,
// bands may be processed in parallel, and the final combine runs in band order.
// The result does not depend on the number of OpenMP threads.
double banded_sum(const HyperCube& cube);
double banded_squared_norm(const HyperCube& cube);

} // namespace pwrctv
