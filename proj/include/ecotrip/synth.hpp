#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ecotrip/errors.hpp"
#include "ecotrip/profile.hpp"
#include "ecotrip/trace.hpp"

namespace ecotrip::synth {

enum class Route { Urban, Suburban, Highway };
enum class Style { Quiet, Normal, Aggressive };

inline constexpr int kRouteCount = 3;
inline constexpr int kStyleCount = 3;

const char* to_string(Route r);
const char* to_string(Style s);
Route route_from_string(const std::string& s);
Style style_from_string(const std::string& s);

struct ScenarioSpec {
    Route route = Route::Urban;
    Style style = Style::Normal;
    int duration_s = 180;
    std::uint64_t seed = 0;
    double noise_level = 0.0; // [0, 0.5]

    void validate() const; // throws BadSpec
};

// All invented calibration in one place; serialized with the analysis config.
struct SynthCalib {
    // Route speed bands, km/h.
    double urban_lo = 20.0, urban_hi = 55.0;
    double suburban_lo = 55.0, suburban_hi = 90.0;
    double highway_lo = 95.0, highway_hi = 130.0;

    // Stop events: mean seconds between stops (0 disables); dwell range.
    double urban_stop_period_s = 80.0;
    double suburban_stop_period_s = 400.0;
    double stop_dwell_min_s = 4.0;
    double stop_dwell_max_s = 12.0;

    // Style acceleration/braking caps, m/s^2.
    double quiet_accel = 1.2, normal_accel = 2.4, aggressive_accel = 4.8;

    // Cruise target churn: amplitude (km/h) and mean seconds between changes.
    double quiet_jitter_kmh = 2.0, normal_jitter_kmh = 6.0, aggressive_jitter_kmh = 14.0;
    double quiet_retarget_s = 35.0, normal_retarget_s = 20.0, aggressive_retarget_s = 8.0;

    // Gear map: upshift speeds (km/h) and rpm-per-km/h per gear.
    std::vector<double> shift_kmh{15.0, 30.0, 50.0, 75.0, 100.0};
    std::vector<double> rpm_per_kmh{120.0, 75.0, 52.0, 38.0, 30.0, 25.0};
    double idle_rpm = 800.0;
    double max_rpm = 6000.0;
    double quiet_rev_offset = -250.0, normal_rev_offset = 250.0, aggressive_rev_offset = 800.0;
    double accel_rev_per_mps2 = 350.0; // extra revs while accelerating

    // Road-load and engine model feeding the channel derivation.
    double vehicle_mass_kg = 1400.0;
    double rolling_coef = 0.012;
    double drag_area_m2 = 0.79; // Cd * A
    double ambient_air_kgpm3 = 1.2;
    double driveline_eff = 0.85;
    double power_per_krpm_kw = 16.0;   // capacity: c * rpm
    double friction_kw_per_krpm = 1.6; // pumping/friction loss
    double idle_load_frac = 0.12;

    // Intake air temperature band, degC (constant per trip).
    double iat_min_c = 18.0, iat_max_c = 32.0;

    // Measurement jitter at noise_level = 1.
    double speed_noise_kmh = 5.0;
    double rpm_noise = 300.0;
};

// Deterministic 1 Hz trip for the scenario: speed held in the route band,
// accelerations bounded by the style, rpm from the gear map, and the engine
// channels (maf, abs_load, map+iat, fuel_rate) derived self-consistently so
// every fuel path agrees on each sample.
Trip generate(const ScenarioSpec& spec, const VehicleProfile& profile,
              const SynthCalib& calib = {});

struct Corpus {
    std::vector<Trip> trips;
    std::vector<std::pair<Route, Style>> labels; // parallel to trips
};

// Balanced 9-class corpus, n trips per (route, style) pair.
Corpus generate_corpus(int n_per_class, std::uint64_t seed, int duration_s,
                       double noise_level, const VehicleProfile& profile,
                       const SynthCalib& calib = {});

} // namespace ecotrip::synth
