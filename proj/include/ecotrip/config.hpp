#pragma once

#include <string>

#include "ecotrip/features.hpp"
#include "ecotrip/profile.hpp"
#include "ecotrip/synth.hpp"

namespace ecotrip::config {

struct TrainSettings {
    int hidden = 8;
    double learning_rate = 0.2;
    int max_cycles = 2000;
    double target_sse = 0.0;
    double init_range = 0.5;
    bool shuffle = false;
    double target_softening = 0.0;
    double holdout_frac = 0.3; // fraction of windows held out for metrics
};

struct SynthSettings {
    int duration_s = 180;
    double noise_level = 0.1;
    synth::SynthCalib calib;
};

// Everything tunable outside the vehicle profile, loadable from one JSON file.
struct AnalysisConfig {
    features::NormalizationRanges ranges;
    int input_width = 6; // 6 or 4, see features::project
    int train_window_s = 3;
    int analyze_window_s = 10;
    double idle_gate_kmh = 3.0; // windows below this mean speed skip style classification
    TrainSettings train;
    SynthSettings synth;

    void validate() const;
};

// Profile files: {"fuel": "gasoline"|"diesel"} picks the defaults, any other
// key overrides one field. Missing keys keep their defaults.
VehicleProfile profile_from_json_text(const std::string& text);
VehicleProfile load_profile_file(const std::string& path);
std::string profile_to_json_text(const VehicleProfile& p);
void save_profile_file(const VehicleProfile& p, const std::string& path);

AnalysisConfig config_from_json_text(const std::string& text);
AnalysisConfig load_config_file(const std::string& path);
std::string config_to_json_text(const AnalysisConfig& c);
void save_config_file(const AnalysisConfig& c, const std::string& path);

} // namespace ecotrip::config
