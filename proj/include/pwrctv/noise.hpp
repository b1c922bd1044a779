#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pwrctv/cube.hpp"

namespace pwrctv {

// Synthetic degradation scenarios. All build on Gaussian noise; impulse noise
// replaces pixels with 0/1 salt-and-pepper, stripe noise adds column-constant
// offsets, each on a random third of the bands.
enum class NoiseCase : int {
    Iid = 1,         // i.i.d. Gaussian, one sigma for every band
    BandVarying = 2, // per-band sigma drawn from [sigma_lo, sigma_hi]
    Impulse = 3,     // BandVarying + salt-and-pepper on 1/3 of the bands
    Stripe = 4,      // BandVarying + stripes on 1/3 of the bands
    Mixed = 5,       // BandVarying + impulse + stripes
};

NoiseCase noise_case_from_int(int id);

// Sigma values are on the [0,1] intensity scale (8-bit figures divided by 255).
// The seed fully determines the output.
struct NoiseSpec {
    NoiseCase case_id = NoiseCase::Iid;
    std::uint64_t seed = 0;
    double sigma_iid = 10.0 / 255.0;
    double sigma_lo = 5.0 / 255.0;
    double sigma_hi = 30.0 / 255.0;
    double impulse_ratio_lo = 0.05;
    double impulse_ratio_hi = 0.30;
    double stripe_ratio_lo = 0.05;
    double stripe_ratio_hi = 0.30;
    double stripe_amp_lo = -0.25;
    double stripe_amp_hi = 0.25;

    void validate() const;

    std::string to_json() const;
    static NoiseSpec from_json(const std::string& text);
};

struct BandImpulse {
    int band = 0;
    double ratio = 0.0;       // requested per-pixel replacement probability
    long long count = 0;      // pixels actually replaced
};

struct BandStripes {
    int band = 0;
    double ratio = 0.0;
    std::vector<int> columns;
    std::vector<double> offsets; // aligned with columns
};

// Which bands/columns/pixels were corrupted, for provenance and verification.
struct MaskReport {
    std::vector<double> sigma;         // per band
    std::vector<BandImpulse> impulse;  // affected bands, ascending
    std::vector<BandStripes> stripes;

    std::string to_json() const;
};

struct CorruptResult {
    HyperCube noisy;
    MaskReport mask;
};

// Apply the scenario to a clean cube in [0,1]. Gaussian noise is not clipped.
// Per-band substreams keep the Gaussian component of every band identical
// across cases for a fixed seed, so bands untouched by impulse/stripe
// corruption match the BandVarying output exactly.
CorruptResult corrupt(const HyperCube& clean, const NoiseSpec& spec);

// round(bands/3), the number of bands each sparse corruption affects.
int affected_band_count(int bands);

} // namespace pwrctv
