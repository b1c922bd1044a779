#include "pwrctv/cube.hpp"

#include <cmath>

namespace pwrctv {

HyperCube::HyperCube(int r, int c, int b, double fill) {
    if (r < 1 || c < 1 || b < 1) {
        throw InputError("HyperCube dimensions must be >= 1, got " + std::to_string(r) + "x" +
                         std::to_string(c) + "x" + std::to_string(b));
    }
    rows = r;
    cols = c;
    bands = b;
    data.assign(static_cast<std::size_t>(r) * c * b, fill);
}

bool HyperCube::all_finite() const {
    const std::size_t n = data.size();
    bool ok = true;
#pragma omp parallel for reduction(&& : ok) schedule(static)
    for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(n); ++k) {
        ok = ok && std::isfinite(data[k]);
    }
    return ok;
}

HyperCube fold3(const Eigen::Ref<const Eigen::MatrixXd>& mat, int rows, int cols) {
    if (mat.rows() != static_cast<Eigen::Index>(rows) * cols) {
        throw InputError("fold3: matrix has " + std::to_string(mat.rows()) +
                         " rows, expected rows*cols = " + std::to_string(static_cast<long>(rows) * cols));
    }
    HyperCube cube(rows, cols, static_cast<int>(mat.cols()));
    unfold3(cube) = mat;
    return cube;
}

double banded_sum(const HyperCube& cube) {
    std::vector<double> partial(cube.bands, 0.0);
#pragma omp parallel for schedule(static)
    for (int b = 0; b < cube.bands; ++b) {
        const double* p = cube.band(b);
        double s = 0.0;
        for (std::size_t k = 0; k < cube.spatial_size(); ++k) s += p[k];
        partial[b] = s;
    }
    double total = 0.0;
    for (double s : partial) total += s;
    return total;
}

double banded_squared_norm(const HyperCube& cube) {
    std::vector<double> partial(cube.bands, 0.0);
#pragma omp parallel for schedule(static)
    for (int b = 0; b < cube.bands; ++b) {
        const double* p = cube.band(b);
        double s = 0.0;
        for (std::size_t k = 0; k < cube.spatial_size(); ++k) s += p[k] * p[k];
        partial[b] = s;
    }
    double total = 0.0;
    for (double s : partial) total += s;
    return total;
}

} // namespace pwrctv
