#pragma once

#include <vector>

#include "pwrctv/cube.hpp"
#include "pwrctv/linalg.hpp"
#include "pwrctv/weights.hpp"

namespace pwrctv {

enum class WeightsMode {
    PanGuided,   // two-stage guidance weights from the pan image
    UnitWeights, // all-ones weights; the guidance-free reduction (RCTV)
};

struct SolverConfig {
    double tau = 0.7;     // TV strength
    double beta = 100.0;  // Gaussian-noise strength
    double lambda = 1.0;  // sparse-noise strength
    int rank = 4;
    double q = 5.0;       // weight exponent
    double rho = 1.5;     // penalty growth factor
    double tol = 1e-5;    // stop when ||Y - UV' - E - S||_F^2 < tol
    int max_iter = 100;
    int corr_window = 9;
    WeightsMode weights_mode = WeightsMode::PanGuided;
    // Skip the weight multiply inside the F update (plain soft-thresholding).
    // Executes the reference path the unit-weight run must match bit for bit.
    bool bypass_weighting = false;

    void validate(int bands) const;
};

// All ADMM iterates. One solve owns its state exclusively; independent solves
// may run concurrently.
struct SolverState {
    FactorPair factor;
    HyperCube e;       // Gaussian noise estimate (rows x cols x bands)
    HyperCube s;       // sparse noise estimate
    HyperCube fh, fv;  // TV auxiliaries (rows x cols x rank)
    HyperCube gamma;   // data multiplier (rows x cols x bands)
    HyperCube gamma_h, gamma_v;
    WeightField weights;
    double mu = 0.0;
    bool stage2_entered = false;
    int iter = 0;
};

struct IterationRecord {
    int iter = 0;
    double residual = 0.0;  // ||Y - UV' - E - S||_F^2 after the multiplier update
    double objective = 0.0;
    double mu = 0.0;
    bool stage2 = false;
    double psnr = 0.0; // NaN when no ground truth was supplied
    double sam = 0.0;
};

struct DenoiseResult {
    HyperCube restored;
    SolverState state;
    std::vector<IterationRecord> trace;
};

// Run the full solve: truncated-SVD initialization, per-iteration F/U/V/E/S
// updates with the one-shot switch to slice-aware weights once the constraint
// residual drops below 100*tol, multiplier updates, and the growing penalty.
// Returns the restored cube UV' along with the final state and the trace.
// ground_truth, when given, adds per-iteration PSNR/SAM to the trace.
DenoiseResult denoise(const HyperCube& y, const PanImage& pan, const SolverConfig& cfg,
                      const HyperCube* ground_truth = nullptr);

// Individual subproblem updates (the solver calls exactly these).

// F_j = shrink(grad_j U + gamma_j / mu) at level tau/mu, weighted by w unless bypassed.
void update_f(const HyperCube& u, const HyperCube& gamma_h, const HyperCube& gamma_v,
              const WeightField& w, double tau, double mu, bool bypass, HyperCube& fh, HyperCube& fv);

// E = mu (Y - UV' - S + Gamma/mu) / (2 beta + mu)
void update_e(const HyperCube& y, const HyperCube& uvt, const HyperCube& s, const HyperCube& gamma,
              double beta, double mu, HyperCube& e);

// S = shrink(Y - UV' - E + Gamma/mu) at level lambda/mu
void update_s(const HyperCube& y, const HyperCube& uvt, const HyperCube& e, const HyperCube& gamma,
              double lambda, double mu, HyperCube& s);

// gamma_j += mu (grad_j U - F_j); gamma += mu * resid, resid = Y - UV' - E - S.
void update_multipliers(const HyperCube& u, const HyperCube& fh, const HyperCube& fv,
                        const HyperCube& resid, double mu, HyperCube& gamma_h, HyperCube& gamma_v,
                        HyperCube& gamma);

// tau * sum_j ||W_j o grad_j U||_1 + beta ||E||_F^2 + lambda ||S||_1
double objective_value(const HyperCube& u, const HyperCube& e, const HyperCube& s, const WeightField& w,
                       double tau, double beta, double lambda);

} // namespace pwrctv
