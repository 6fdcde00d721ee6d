#include "ecotrip/features.hpp"

#include <algorithm>
#include <cmath>

namespace ecotrip::features {

namespace {

struct MeanStd {
    double mean;
    double std;
};

// Population standard deviation.
MeanStd mean_std(std::span<const double> xs) {
    double sum = 0.0;
    for (double x : xs) sum += x;
    const double mean = sum / static_cast<double>(xs.size());
    double sq = 0.0;
    for (double x : xs) sq += (x - mean) * (x - mean);
    return {mean, std::sqrt(sq / static_cast<double>(xs.size()))};
}

} // namespace

void NormalizationRanges::validate() const {
    for (const Range& r : as_array()) {
        if (!(r.hi > r.lo)) {
            throw Error("normalization range must have max > min");
        }
    }
}

RawFeatures extract(const Window& w) {
    if (w.samples.size() < 2) {
        throw WindowTooSmall("feature extraction needs at least 2 samples, got " +
                             std::to_string(w.samples.size()));
    }
    std::vector<double> speed(w.samples.size());
    std::vector<double> rpm(w.samples.size());
    for (std::size_t i = 0; i < w.samples.size(); ++i) {
        speed[i] = w.samples[i].speed_kmh;
        rpm[i] = w.samples[i].rpm;
    }
    const MeanStd s = mean_std(speed);
    const MeanStd a = mean_std(w.accel_mps2);
    const MeanStd r = mean_std(rpm);
    return RawFeatures{s.mean, s.std, a.mean, a.std, r.mean, r.std};
}

FeatureVector normalize(const RawFeatures& raw, const NormalizationRanges& ranges) {
    ranges.validate();
    const auto xs = raw.as_array();
    const auto rs = ranges.as_array();
    FeatureVector out{};
    for (int i = 0; i < kFeatureCount; ++i) {
        const double t = (xs[i] - rs[i].lo) / (rs[i].hi - rs[i].lo);
        out[i] = std::clamp(t, 0.0, 1.0);
    }
    return out;
}

std::vector<double> project(const FeatureVector& f, int input_width) {
    if (input_width == kFeatureCount) {
        return std::vector<double>(f.begin(), f.end());
    }
    if (input_width == 4) {
        return {f[0], f[1], f[2], f[4]}; // mean_speed, std_speed, mean_accel, mean_rpm
    }
    throw Error("unsupported feature input width " + std::to_string(input_width));
}

} // namespace ecotrip::features
