#include "pwrctv/solver.hpp"

#include <cmath>
#include <limits>

#include "pwrctv/errors.hpp"
#include "pwrctv/fft2d.hpp"
#include "pwrctv/gradient.hpp"
#include "pwrctv/metrics.hpp"

namespace pwrctv {

void SolverConfig::validate(int bands) const {
    if (tau <= 0.0) throw InputError("SolverConfig: tau must be positive");
    if (beta <= 0.0) throw InputError("SolverConfig: beta must be positive");
    if (lambda <= 0.0) throw InputError("SolverConfig: lambda must be positive");
    if (q <= 0.0) throw InputError("SolverConfig: q must be positive");
    if (rho <= 1.0) throw InputError("SolverConfig: rho must be > 1");
    if (tol <= 0.0) throw InputError("SolverConfig: tol must be positive");
    if (max_iter < 1) throw InputError("SolverConfig: max_iter must be >= 1");
    if (rank < 1) throw InputError("SolverConfig: rank must be >= 1");
    if (rank >= bands) {
        throw InputError("SolverConfig: rank " + std::to_string(rank) + " must be below the band count " +
                         std::to_string(bands));
    }
    if (corr_window < 3 || corr_window % 2 == 0) {
        throw InputError("SolverConfig: corr_window must be odd and >= 3");
    }
}

namespace {

// y - uvt - e - s, materialized for the multiplier update and the residual.
void residual_into(const HyperCube& y, const HyperCube& uvt, const HyperCube& e, const HyperCube& s,
                   HyperCube& out) {
    const std::size_t n = y.size();
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(n); ++k) {
        out.data[k] = y.data[k] - uvt.data[k] - e.data[k] - s.data[k];
    }
}

double squared_residual(const HyperCube& y, const HyperCube& uvt, const HyperCube& e, const HyperCube& s) {
    std::vector<double> partial(y.bands, 0.0);
#pragma omp parallel for schedule(static)
    for (int b = 0; b < y.bands; ++b) {
        const double* py = y.band(b);
        const double* pu = uvt.band(b);
        const double* pe = e.band(b);
        const double* ps = s.band(b);
        double acc = 0.0;
        for (std::size_t k = 0; k < y.spatial_size(); ++k) {
            const double r = py[k] - pu[k] - pe[k] - ps[k];
            acc += r * r;
        }
        partial[b] = acc;
    }
    double total = 0.0;
    for (double v : partial) total += v;
    return total;
}

double banded_abs_sum(const HyperCube& a) {
    std::vector<double> partial(a.bands, 0.0);
#pragma omp parallel for schedule(static)
    for (int b = 0; b < a.bands; ++b) {
        const double* p = a.band(b);
        double acc = 0.0;
        for (std::size_t k = 0; k < a.spatial_size(); ++k) acc += std::abs(p[k]);
        partial[b] = acc;
    }
    double total = 0.0;
    for (double v : partial) total += v;
    return total;
}

} // namespace

void update_f(const HyperCube& u, const HyperCube& gamma_h, const HyperCube& gamma_v,
              const WeightField& w, double tau, double mu, bool bypass, HyperCube& fh, HyperCube& fv) {
    if (mu <= 0.0) throw InputError("update_f: mu must be positive");
    const double alpha = tau / mu;
    const std::size_t npix = u.spatial_size();
#pragma omp parallel for schedule(static)
    for (int r = 0; r < u.bands; ++r) {
        std::vector<double> grad(npix);
        gradient_h_into(u.band(r), u.rows, u.cols, grad.data());
        const double* g = gamma_h.band(r);
        const double* ww = w.wh.band(r);
        double* out = fh.band(r);
        if (bypass) {
            for (std::size_t k = 0; k < npix; ++k) out[k] = soft_threshold(grad[k] + g[k] / mu, alpha);
        } else {
            for (std::size_t k = 0; k < npix; ++k)
                out[k] = weighted_soft_threshold(grad[k] + g[k] / mu, alpha, ww[k]);
        }

        gradient_v_into(u.band(r), u.rows, u.cols, grad.data());
        g = gamma_v.band(r);
        ww = w.wv.band(r);
        out = fv.band(r);
        if (bypass) {
            for (std::size_t k = 0; k < npix; ++k) out[k] = soft_threshold(grad[k] + g[k] / mu, alpha);
        } else {
            for (std::size_t k = 0; k < npix; ++k)
                out[k] = weighted_soft_threshold(grad[k] + g[k] / mu, alpha, ww[k]);
        }
    }
}

void update_e(const HyperCube& y, const HyperCube& uvt, const HyperCube& s, const HyperCube& gamma,
              double beta, double mu, HyperCube& e) {
    if (mu <= 0.0 || beta <= 0.0) throw InputError("update_e: mu and beta must be positive");
    const double denom = 2.0 * beta + mu;
    const std::size_t n = y.size();
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(n); ++k) {
        e.data[k] = mu * (y.data[k] - uvt.data[k] - s.data[k] + gamma.data[k] / mu) / denom;
    }
}

void update_s(const HyperCube& y, const HyperCube& uvt, const HyperCube& e, const HyperCube& gamma,
              double lambda, double mu, HyperCube& s) {
    if (mu <= 0.0) throw InputError("update_s: mu must be positive");
    const double alpha = lambda / mu;
    const std::size_t n = y.size();
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(n); ++k) {
        s.data[k] = soft_threshold(y.data[k] - uvt.data[k] - e.data[k] + gamma.data[k] / mu, alpha);
    }
}

void update_multipliers(const HyperCube& u, const HyperCube& fh, const HyperCube& fv,
                        const HyperCube& resid, double mu, HyperCube& gamma_h, HyperCube& gamma_v,
                        HyperCube& gamma) {
    const std::size_t npix = u.spatial_size();
#pragma omp parallel for schedule(static)
    for (int r = 0; r < u.bands; ++r) {
        std::vector<double> grad(npix);
        gradient_h_into(u.band(r), u.rows, u.cols, grad.data());
        double* gh = gamma_h.band(r);
        const double* f = fh.band(r);
        for (std::size_t k = 0; k < npix; ++k) gh[k] += mu * (grad[k] - f[k]);

        gradient_v_into(u.band(r), u.rows, u.cols, grad.data());
        double* gv = gamma_v.band(r);
        f = fv.band(r);
        for (std::size_t k = 0; k < npix; ++k) gv[k] += mu * (grad[k] - f[k]);
    }
    const std::size_t n = gamma.size();
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(n); ++k) {
        gamma.data[k] += mu * resid.data[k];
    }
}

double objective_value(const HyperCube& u, const HyperCube& e, const HyperCube& s, const WeightField& w,
                       double tau, double beta, double lambda) {
    const std::size_t npix = u.spatial_size();
    std::vector<double> partial(u.bands, 0.0);
#pragma omp parallel for schedule(static)
    for (int r = 0; r < u.bands; ++r) {
        std::vector<double> grad(npix);
        double acc = 0.0;
        gradient_h_into(u.band(r), u.rows, u.cols, grad.data());
        const double* ww = w.wh.band(r);
        for (std::size_t k = 0; k < npix; ++k) acc += std::abs(ww[k] * grad[k]);
        gradient_v_into(u.band(r), u.rows, u.cols, grad.data());
        ww = w.wv.band(r);
        for (std::size_t k = 0; k < npix; ++k) acc += std::abs(ww[k] * grad[k]);
        partial[r] = acc;
    }
    double tv = 0.0;
    for (double v : partial) tv += v;
    return tau * tv + beta * banded_squared_norm(e) + lambda * banded_abs_sum(s);
}

DenoiseResult denoise(const HyperCube& y, const PanImage& pan, const SolverConfig& cfg,
                      const HyperCube* ground_truth) {
    cfg.validate(y.bands);
    if (!y.all_finite()) throw InputError("denoise: input cube has non-finite values");
    if (ground_truth && !ground_truth->same_shape(y)) {
        throw InputError("denoise: ground truth shape does not match input");
    }

    const int rows = y.rows, cols = y.cols, bands = y.bands, rank = cfg.rank;
    const std::size_t npix = y.spatial_size();

    // Guidance is live only when the pan image actually has contrast; a
    // constant pan yields all-one stage-1 weights and no usable correlations,
    // so such runs keep unit weights throughout and match the RCTV reduction.
    bool guided = cfg.weights_mode == WeightsMode::PanGuided && !cfg.bypass_weighting;
    if (guided) {
        if (pan.rows != rows || pan.cols != cols) {
            throw InputError("denoise: pan image is " + std::to_string(pan.rows) + "x" +
                             std::to_string(pan.cols) + ", cube is " + std::to_string(rows) + "x" +
                             std::to_string(cols));
        }
        const GradientPair gp = gradient(pan.view());
        const double contrast = std::max(gp.horizontal.abs().maxCoeff(), gp.vertical.abs().maxCoeff());
        if (pan.degenerate || contrast == 0.0) guided = false;
    }

    SolverState st;
    TruncatedSvd init = truncated_svd_init(unfold3(y), rows, cols, rank);
    if (init.spectral_norm <= 0.0) throw NumericalError("denoise: input cube is identically zero");
    st.factor = std::move(init.factor);
    st.mu = 1.0 / init.spectral_norm;
    st.e = HyperCube(rows, cols, bands);
    st.s = HyperCube(rows, cols, bands);
    st.gamma = HyperCube(rows, cols, bands);
    st.gamma_h = HyperCube(rows, cols, rank);
    st.gamma_v = HyperCube(rows, cols, rank);
    st.fh = HyperCube(rows, cols, rank);
    st.fv = HyperCube(rows, cols, rank);
    gradient_h_cube(st.factor.coeffs, st.fh);
    gradient_v_cube(st.factor.coeffs, st.fv);
    st.weights = guided ? stage1_weights(pan, cfg.q, rank) : unit_weights(rows, cols, rank);
    st.weights.corr_window = cfg.corr_window;

    Fft2D fft(rows, cols);
    const GradKernelSpectra spectra(fft);

    // Iteration workspace.
    HyperCube uvt(rows, cols, bands);
    HyperCube work(rows, cols, bands);
    HyperCube rhs(rows, cols, rank);

    auto u_mat = [&]() { return unfold3(st.factor.coeffs); };

    DenoiseResult res;
    res.trace.reserve(cfg.max_iter);

    const double stage_threshold = 100.0 * cfg.tol;
    double residual = std::numeric_limits<double>::infinity();

    for (int it = 1; it <= cfg.max_iter; ++it) {
        st.iter = it;

        update_f(st.factor.coeffs, st.gamma_h, st.gamma_v, st.weights, cfg.tau, st.mu,
                 cfg.bypass_weighting, st.fh, st.fv);

        // rhs = (mu (Y - E - S) + Gamma) V, then the per-slice FFT solve for U.
        {
            const std::size_t n = y.size();
#pragma omp parallel for schedule(static)
            for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(n); ++k) {
                work.data[k] = st.mu * (y.data[k] - st.e.data[k] - st.s.data[k]) + st.gamma.data[k];
            }
            unfold3(rhs).noalias() = unfold3(work) * st.factor.basis;
        }
        solve_u(rhs, st.fh, st.fv, st.gamma_h, st.gamma_v, st.mu, fft, spectra, st.factor.coeffs);

        // One-shot switch to slice-aware weights once the constraint residual
        // (with the fresh U) is small enough for the coefficients to be trusted.
        if (!st.stage2_entered) {
            unfold3(uvt).noalias() = u_mat() * st.factor.basis.transpose();
            const double stage_res = squared_residual(y, uvt, st.e, st.s);
            if (stage_res < stage_threshold) {
                st.stage2_entered = true;
                if (guided) {
                    st.weights = stage2_weights(pan, st.factor.coeffs, cfg.q, cfg.corr_window);
                }
            }
        }

        // V step: orthonormal factor aligning the data residual with U.
        {
            const std::size_t n = y.size();
#pragma omp parallel for schedule(static)
            for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(n); ++k) {
                work.data[k] = y.data[k] - st.e.data[k] - st.s.data[k] + st.gamma.data[k] / st.mu;
            }
            st.factor.basis = procrustes_v(unfold3(work), u_mat(), &st.factor.basis);
        }

        unfold3(uvt).noalias() = u_mat() * st.factor.basis.transpose();
        update_e(y, uvt, st.s, st.gamma, cfg.beta, st.mu, st.e);
        update_s(y, uvt, st.e, st.gamma, cfg.lambda, st.mu, st.s);

        residual_into(y, uvt, st.e, st.s, work);
        update_multipliers(st.factor.coeffs, st.fh, st.fv, work, st.mu, st.gamma_h, st.gamma_v, st.gamma);
        residual = banded_squared_norm(work);

        IterationRecord rec;
        rec.iter = it;
        rec.residual = residual;
        rec.objective = objective_value(st.factor.coeffs, st.e, st.s, st.weights, cfg.tau, cfg.beta,
                                        cfg.lambda);
        rec.mu = st.mu;
        rec.stage2 = st.stage2_entered;
        if (ground_truth) {
            rec.psnr = psnr(uvt, *ground_truth);
            rec.sam = sam(uvt, *ground_truth);
        } else {
            rec.psnr = std::numeric_limits<double>::quiet_NaN();
            rec.sam = std::numeric_limits<double>::quiet_NaN();
        }
        res.trace.push_back(rec);

        if (!std::isfinite(residual)) {
            throw NumericalError("denoise: non-finite residual at iteration " + std::to_string(it));
        }

        st.mu *= cfg.rho;
        if (residual < cfg.tol) break;
    }

    unfold3(uvt).noalias() = u_mat() * st.factor.basis.transpose();
    res.restored = std::move(uvt);
    if (!res.restored.all_finite()) throw NumericalError("denoise: restored cube has non-finite values");
    res.state = std::move(st);
    return res;
}

} // namespace pwrctv
