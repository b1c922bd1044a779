#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace pwrctv {

// Canonical splitmix64 step; used only to mix substream identifiers into seeds.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Replayable random stream identified by (seed, purpose, index), backed by the
// standard-specified mt19937_64 engine. Distinct purposes/indices give
// independent streams, so per-band generation can run in parallel while staying
// byte-reproducible, and corruption types can be added or removed without
// shifting each other's draws.
class SubStream {
public:
    enum Purpose : std::uint32_t {
        kSigmaDraw = 1,
        kGaussian = 2,
        kImpulseBands = 3,
        kImpulseRatio = 4,
        kImpulsePixels = 5,
        kStripeBands = 6,
        kStripeRatio = 7,
        kStripeColumns = 8,
    };

    SubStream(std::uint64_t seed, std::uint32_t purpose, std::uint32_t index) {
        std::uint64_t s = seed;
        std::uint64_t m = splitmix64_next(s) ^ (0xD1B54A32D192ED03ULL * (static_cast<std::uint64_t>(purpose) + 1));
        std::uint64_t m2 = splitmix64_next(m) ^ (0x8CB92BA72F3D8DD7ULL * (static_cast<std::uint64_t>(index) + 1));
        engine_.seed(splitmix64_next(m2));
    }

    std::uint64_t next_u64() { return engine_(); }

    // 53-bit uniform in [0, 1).
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Standard normal via Box-Muller; pairs are drawn together and the spare cached.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform01(); // (0, 1]
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(t);
        have_spare_ = true;
        return r * std::cos(t);
    }

    // Unbiased integer in [0, n) by rejection.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = n * (~std::uint64_t{0} / n);
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace pwrctv
