#include "pwrctv/reference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pwrctv::ref {

void gradient_h(const double* field, int rows, int cols, double* out) {
    for (int j = 0; j < cols; ++j) {
        const int jn = (j + 1) % cols;
        for (int i = 0; i < rows; ++i) {
            out[j * rows + i] = field[jn * rows + i] - field[j * rows + i];
        }
    }
}

void gradient_v(const double* field, int rows, int cols, double* out) {
    for (int j = 0; j < cols; ++j) {
        for (int i = 0; i < rows; ++i) {
            const int in = (i + 1) % rows;
            out[j * rows + i] = field[j * rows + in] - field[j * rows + i];
        }
    }
}

void divergence(const double* gh, const double* gv, int rows, int cols, double* out) {
    for (int j = 0; j < cols; ++j) {
        const int jp = (j + cols - 1) % cols;
        for (int i = 0; i < rows; ++i) {
            const int ip = (i + rows - 1) % rows;
            out[j * rows + i] =
                (gh[jp * rows + i] - gh[j * rows + i]) + (gv[j * rows + ip] - gv[j * rows + i]);
        }
    }
}

void soft_threshold(const double* x, double alpha, std::size_t n, double* out) {
    for (std::size_t k = 0; k < n; ++k) {
        const double m = std::abs(x[k]) - alpha;
        out[k] = m > 0.0 ? (x[k] < 0.0 ? -m : m) : 0.0;
    }
}

void weighted_soft_threshold(const double* x, double alpha, const double* w, std::size_t n, double* out) {
    for (std::size_t k = 0; k < n; ++k) {
        const double m = std::abs(x[k]) - alpha * w[k];
        out[k] = m > 0.0 ? (x[k] < 0.0 ? -m : m) : 0.0;
    }
}

Eigen::ArrayXXd local_correlation(const Eigen::Ref<const Eigen::ArrayXXd>& a,
                                  const Eigen::Ref<const Eigen::ArrayXXd>& b, int window) {
    const int rows = static_cast<int>(a.rows());
    const int cols = static_cast<int>(a.cols());
    const int h = window / 2;
    const double n = static_cast<double>(window) * window;
    Eigen::ArrayXXd out(rows, cols);
    for (int j = 0; j < cols; ++j) {
        for (int i = 0; i < rows; ++i) {
            double ma = 0.0, mb = 0.0;
            for (int dj = -h; dj <= h; ++dj) {
                for (int di = -h; di <= h; ++di) {
                    const int ii = std::clamp(i + di, 0, rows - 1);
                    const int jj = std::clamp(j + dj, 0, cols - 1);
                    ma += a(ii, jj);
                    mb += b(ii, jj);
                }
            }
            ma /= n;
            mb /= n;
            double saa = 0.0, sbb = 0.0, sab = 0.0;
            for (int dj = -h; dj <= h; ++dj) {
                for (int di = -h; di <= h; ++di) {
                    const int ii = std::clamp(i + di, 0, rows - 1);
                    const int jj = std::clamp(j + dj, 0, cols - 1);
                    const double da = a(ii, jj) - ma;
                    const double db = b(ii, jj) - mb;
                    saa += da * da;
                    sbb += db * db;
                    sab += da * db;
                }
            }
            if (saa <= 0.0 || sbb <= 0.0) {
                out(i, j) = 0.0;
            } else {
                out(i, j) = std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
            }
        }
    }
    return out;
}

double psnr(const HyperCube& x, const HyperCube& refcube) {
    double acc = 0.0;
    for (int b = 0; b < x.bands; ++b) {
        const double* p = x.band(b);
        const double* q = refcube.band(b);
        double mse = 0.0;
        for (std::size_t k = 0; k < x.spatial_size(); ++k) {
            const double d = p[k] - q[k];
            mse += d * d;
        }
        mse /= static_cast<double>(x.spatial_size());
        acc += mse > 0.0 ? 10.0 * std::log10(1.0 / mse) : std::numeric_limits<double>::infinity();
    }
    return acc / static_cast<double>(x.bands);
}

double sam(const HyperCube& x, const HyperCube& refcube) {
    const std::size_t npix = x.spatial_size();
    double acc = 0.0;
    long long counted = 0;
    for (std::size_t k = 0; k < npix; ++k) {
        double dot = 0.0, nx = 0.0, ny = 0.0;
        for (int b = 0; b < x.bands; ++b) {
            const double vx = x.data[k + static_cast<std::size_t>(b) * npix];
            const double vy = refcube.data[k + static_cast<std::size_t>(b) * npix];
            dot += vx * vy;
            nx += vx * vx;
            ny += vy * vy;
        }
        if (nx == 0.0 || ny == 0.0) continue;
        acc += std::acos(std::clamp(dot / std::sqrt(nx * ny), -1.0, 1.0));
        ++counted;
    }
    if (counted == 0) return 0.0;
    return acc / static_cast<double>(counted) * (180.0 / 3.14159265358979323846);
}

double ssim_band(const Eigen::Ref<const Eigen::ArrayXXd>& x, const Eigen::Ref<const Eigen::ArrayXXd>& y) {
    constexpr int w = 11;
    constexpr double sigma = 1.5;
    constexpr double c1 = 0.01 * 0.01;
    constexpr double c2 = 0.03 * 0.03;
    double g[w][w];
    double gsum = 0.0;
    for (int a = 0; a < w; ++a) {
        for (int b = 0; b < w; ++b) {
            const double da = a - (w - 1) / 2.0;
            const double db = b - (w - 1) / 2.0;
            g[a][b] = std::exp(-(da * da + db * db) / (2.0 * sigma * sigma));
            gsum += g[a][b];
        }
    }
    for (int a = 0; a < w; ++a)
        for (int b = 0; b < w; ++b) g[a][b] /= gsum;

    const int rows = static_cast<int>(x.rows());
    const int cols = static_cast<int>(x.cols());
    double total = 0.0;
    long long count = 0;
    for (int j = 0; j + w <= cols; ++j) {
        for (int i = 0; i + w <= rows; ++i) {
            double mx = 0.0, my = 0.0, sxx = 0.0, syy = 0.0, sxy = 0.0;
            for (int b = 0; b < w; ++b) {
                for (int a = 0; a < w; ++a) {
                    const double vx = x(i + a, j + b);
                    const double vy = y(i + a, j + b);
                    mx += g[a][b] * vx;
                    my += g[a][b] * vy;
                    sxx += g[a][b] * vx * vx;
                    syy += g[a][b] * vy * vy;
                    sxy += g[a][b] * vx * vy;
                }
            }
            sxx -= mx * mx;
            syy -= my * my;
            sxy -= mx * my;
            const double num = (2.0 * mx * my + c1) * (2.0 * sxy + c2);
            const double den = (mx * mx + my * my + c1) * (sxx + syy + c2);
            total += num / den;
            ++count;
        }
    }
    return total / static_cast<double>(count);
}

Eigen::MatrixXd difference_matrix_h(int rows, int cols) {
    const int n = rows * cols;
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j < cols; ++j) {
        const int jn = (j + 1) % cols;
        for (int i = 0; i < rows; ++i) {
            d(j * rows + i, jn * rows + i) += 1.0;
            d(j * rows + i, j * rows + i) -= 1.0;
        }
    }
    return d;
}

Eigen::MatrixXd difference_matrix_v(int rows, int cols) {
    const int n = rows * cols;
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j < cols; ++j) {
        for (int i = 0; i < rows; ++i) {
            const int in = (i + 1) % rows;
            d(j * rows + i, j * rows + in) += 1.0;
            d(j * rows + i, j * rows + i) -= 1.0;
        }
    }
    return d;
}

Eigen::VectorXd dense_solve_u_slice(const Eigen::VectorXd& rhs, const Eigen::VectorXd& fh,
                                    const Eigen::VectorXd& fv, const Eigen::VectorXd& gh,
                                    const Eigen::VectorXd& gv, double mu, int rows, int cols) {
    const Eigen::MatrixXd dh = difference_matrix_h(rows, cols);
    const Eigen::MatrixXd dv = difference_matrix_v(rows, cols);
    const int n = rows * cols;
    const Eigen::MatrixXd lhs = mu * Eigen::MatrixXd::Identity(n, n) +
                                mu * (dh.transpose() * dh + dv.transpose() * dv);
    const Eigen::VectorXd b = rhs + dh.transpose() * (mu * fh - gh) + dv.transpose() * (mu * fv - gv);
    return lhs.partialPivLu().solve(b);
}

} // namespace pwrctv::ref
