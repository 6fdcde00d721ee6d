#pragma once

#include <array>
#include <vector>

#include "ecotrip/errors.hpp"
#include "ecotrip/trace.hpp"

namespace ecotrip::features {

inline constexpr int kFeatureCount = 6;

// Per-window statistics in raw units: speed km/h, acceleration m/s^2, rpm.
struct RawFeatures {
    double mean_speed = 0.0;
    double std_speed = 0.0;
    double mean_accel = 0.0;
    double std_accel = 0.0;
    double mean_rpm = 0.0;
    double std_rpm = 0.0;

    std::array<double, kFeatureCount> as_array() const {
        return {mean_speed, std_speed, mean_accel, std_accel, mean_rpm, std_rpm};
    }
};

struct Range {
    double lo = 0.0;
    double hi = 1.0;
};

struct NormalizationRanges {
    Range mean_speed{0.0, 180.0};
    Range std_speed{0.0, 40.0};
    Range mean_accel{-6.0, 6.0};
    Range std_accel{0.0, 4.0};
    Range mean_rpm{0.0, 6000.0};
    Range std_rpm{0.0, 2000.0};

    std::array<Range, kFeatureCount> as_array() const {
        return {mean_speed, std_speed, mean_accel, std_accel, mean_rpm, std_rpm};
    }

    void validate() const; // throws Error when any max <= min
};

// Every component in [0,1] after normalization.
using FeatureVector = std::array<double, kFeatureCount>;

// Arithmetic mean and population standard deviation of speed, acceleration
// and rpm over the window. Throws WindowTooSmall below 2 samples.
RawFeatures extract(const Window& w);

// (x - min) / (max - min) per component, clamped to [0,1].
FeatureVector normalize(const RawFeatures& raw, const NormalizationRanges& ranges);

// Network input of the configured width: 6 keeps all components, 4 keeps
// mean+std of speed but only the means of acceleration and rpm.
std::vector<double> project(const FeatureVector& f, int input_width);

} // namespace ecotrip::features
