#include "pwrctv/noise.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "pwrctv/errors.hpp"
#include "pwrctv/rng.hpp"

namespace pwrctv {

using nlohmann::json;

NoiseCase noise_case_from_int(int id) {
    if (id < 1 || id > 5) throw InputError("unknown noise case " + std::to_string(id) + ", expected 1..5");
    return static_cast<NoiseCase>(id);
}

void NoiseSpec::validate() const {
    auto ratio_ok = [](double lo, double hi) { return 0.0 <= lo && lo <= hi && hi <= 1.0; };
    if (sigma_iid < 0.0) throw InputError("NoiseSpec: sigma_iid must be >= 0");
    if (sigma_lo < 0.0 || sigma_lo > sigma_hi) throw InputError("NoiseSpec: invalid sigma range");
    if (!ratio_ok(impulse_ratio_lo, impulse_ratio_hi)) throw InputError("NoiseSpec: invalid impulse ratio range");
    if (!ratio_ok(stripe_ratio_lo, stripe_ratio_hi)) throw InputError("NoiseSpec: invalid stripe ratio range");
    if (stripe_amp_lo > stripe_amp_hi) throw InputError("NoiseSpec: invalid stripe amplitude range");
}

std::string NoiseSpec::to_json() const {
    json j;
    j["case"] = static_cast<int>(case_id);
    j["seed"] = seed;
    j["sigma_iid"] = sigma_iid;
    j["sigma_range"] = {sigma_lo, sigma_hi};
    j["impulse_ratio_range"] = {impulse_ratio_lo, impulse_ratio_hi};
    j["stripe_ratio_range"] = {stripe_ratio_lo, stripe_ratio_hi};
    j["stripe_amplitude_range"] = {stripe_amp_lo, stripe_amp_hi};
    return j.dump(2);
}

NoiseSpec NoiseSpec::from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("NoiseSpec: malformed JSON: ") + e.what());
    }
    NoiseSpec spec;
    try {
        spec.case_id = noise_case_from_int(j.at("case").get<int>());
        spec.seed = j.at("seed").get<std::uint64_t>();
        spec.sigma_iid = j.value("sigma_iid", spec.sigma_iid);
        if (j.contains("sigma_range")) {
            spec.sigma_lo = j["sigma_range"].at(0).get<double>();
            spec.sigma_hi = j["sigma_range"].at(1).get<double>();
        }
        if (j.contains("impulse_ratio_range")) {
            spec.impulse_ratio_lo = j["impulse_ratio_range"].at(0).get<double>();
            spec.impulse_ratio_hi = j["impulse_ratio_range"].at(1).get<double>();
        }
        if (j.contains("stripe_ratio_range")) {
            spec.stripe_ratio_lo = j["stripe_ratio_range"].at(0).get<double>();
            spec.stripe_ratio_hi = j["stripe_ratio_range"].at(1).get<double>();
        }
        if (j.contains("stripe_amplitude_range")) {
            spec.stripe_amp_lo = j["stripe_amplitude_range"].at(0).get<double>();
            spec.stripe_amp_hi = j["stripe_amplitude_range"].at(1).get<double>();
        }
    } catch (const json::exception& e) {
        throw InputError(std::string("NoiseSpec: missing or mistyped field: ") + e.what());
    }
    spec.validate();
    return spec;
}

std::string MaskReport::to_json() const {
    json j;
    j["sigma"] = sigma;
    j["impulse"] = json::array();
    for (const auto& bi : impulse) {
        j["impulse"].push_back({{"band", bi.band}, {"ratio", bi.ratio}, {"count", bi.count}});
    }
    j["stripes"] = json::array();
    for (const auto& bs : stripes) {
        j["stripes"].push_back(
            {{"band", bs.band}, {"ratio", bs.ratio}, {"columns", bs.columns}, {"offsets", bs.offsets}});
    }
    return j.dump(2);
}

int affected_band_count(int bands) {
    return static_cast<int>(std::lround(bands / 3.0));
}

namespace {

// Random subset of `count` bands out of `bands`, via partial Fisher-Yates.
std::vector<int> pick_bands(std::uint64_t seed, std::uint32_t purpose, int bands, int count) {
    std::vector<int> idx(bands);
    for (int b = 0; b < bands; ++b) idx[b] = b;
    SubStream rng(seed, purpose, 0);
    for (int k = 0; k < count; ++k) {
        const int j = k + static_cast<int>(rng.below(static_cast<std::uint64_t>(bands - k)));
        std::swap(idx[k], idx[j]);
    }
    idx.resize(count);
    std::sort(idx.begin(), idx.end());
    return idx;
}

} // namespace

CorruptResult corrupt(const HyperCube& clean, const NoiseSpec& spec) {
    spec.validate();
    if (!clean.all_finite()) throw InputError("corrupt: input cube has non-finite values");
    for (double v : clean.data) {
        if (v < 0.0 || v > 1.0) throw InputError("corrupt: input cube values must lie in [0,1]");
    }

    const int bands = clean.bands;
    const int rows = clean.rows;
    const int cols = clean.cols;
    const std::size_t npix = clean.spatial_size();
    const bool band_varying = spec.case_id != NoiseCase::Iid;
    const bool with_impulse = spec.case_id == NoiseCase::Impulse || spec.case_id == NoiseCase::Mixed;
    const bool with_stripes = spec.case_id == NoiseCase::Stripe || spec.case_id == NoiseCase::Mixed;

    CorruptResult res;
    res.noisy = clean;
    res.mask.sigma.resize(bands);

    // Gaussian component, one substream per band.
#pragma omp parallel for schedule(static)
    for (int b = 0; b < bands; ++b) {
        double sigma = spec.sigma_iid;
        if (band_varying) {
            SubStream sdraw(spec.seed, SubStream::kSigmaDraw, static_cast<std::uint32_t>(b));
            sigma = sdraw.uniform(spec.sigma_lo, spec.sigma_hi);
        }
        res.mask.sigma[b] = sigma;
        if (sigma > 0.0) {
            SubStream g(spec.seed, SubStream::kGaussian, static_cast<std::uint32_t>(b));
            double* p = res.noisy.band(b);
            for (std::size_t k = 0; k < npix; ++k) p[k] += sigma * g.normal();
        }
    }

    // Stripes: column-constant offsets on round(bands/3) random bands.
    if (with_stripes) {
        const std::vector<int> sel = pick_bands(spec.seed, SubStream::kStripeBands, bands, affected_band_count(bands));
        res.mask.stripes.resize(sel.size());
#pragma omp parallel for schedule(static)
        for (std::size_t s = 0; s < sel.size(); ++s) {
            const int b = sel[s];
            SubStream rr(spec.seed, SubStream::kStripeRatio, static_cast<std::uint32_t>(b));
            const double ratio = rr.uniform(spec.stripe_ratio_lo, spec.stripe_ratio_hi);
            const int ncol = static_cast<int>(std::lround(ratio * cols));

            SubStream cs(spec.seed, SubStream::kStripeColumns, static_cast<std::uint32_t>(b));
            std::vector<int> colidx(cols);
            for (int c = 0; c < cols; ++c) colidx[c] = c;
            for (int k = 0; k < ncol; ++k) {
                const int j = k + static_cast<int>(cs.below(static_cast<std::uint64_t>(cols - k)));
                std::swap(colidx[k], colidx[j]);
            }
            colidx.resize(ncol);

            BandStripes& bs = res.mask.stripes[s];
            bs.band = b;
            bs.ratio = ratio;
            bs.columns = colidx;
            bs.offsets.resize(ncol);
            for (int k = 0; k < ncol; ++k) {
                bs.offsets[k] = cs.uniform(spec.stripe_amp_lo, spec.stripe_amp_hi);
                double* col = res.noisy.band(b) + static_cast<std::size_t>(bs.columns[k]) * rows;
                for (int i = 0; i < rows; ++i) col[i] += bs.offsets[k];
            }
        }
    }

    // Impulse last: salt-and-pepper replacement, so corrupted pixels are exactly 0 or 1.
    if (with_impulse) {
        const std::vector<int> sel =
            pick_bands(spec.seed, SubStream::kImpulseBands, bands, affected_band_count(bands));
        res.mask.impulse.resize(sel.size());
#pragma omp parallel for schedule(static)
        for (std::size_t s = 0; s < sel.size(); ++s) {
            const int b = sel[s];
            SubStream rr(spec.seed, SubStream::kImpulseRatio, static_cast<std::uint32_t>(b));
            const double ratio = rr.uniform(spec.impulse_ratio_lo, spec.impulse_ratio_hi);

            SubStream px(spec.seed, SubStream::kImpulsePixels, static_cast<std::uint32_t>(b));
            double* p = res.noisy.band(b);
            long long count = 0;
            for (std::size_t k = 0; k < npix; ++k) {
                if (px.uniform01() < ratio) {
                    p[k] = px.uniform01() < 0.5 ? 0.0 : 1.0;
                    ++count;
                }
            }
            res.mask.impulse[s] = BandImpulse{b, ratio, count};
        }
    }

    return res;
}

} // namespace pwrctv
