#include "ecotrip/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "ecotrip/fuel.hpp"
#include "ecotrip/rand.hpp"

namespace ecotrip::synth {

namespace {

constexpr double kGravity = 9.81;

struct Band {
    double lo, hi;
};

Band band_of(Route r, const SynthCalib& c) {
    switch (r) {
    case Route::Urban: return {c.urban_lo, c.urban_hi};
    case Route::Suburban: return {c.suburban_lo, c.suburban_hi};
    case Route::Highway: return {c.highway_lo, c.highway_hi};
    }
    return {0.0, 0.0};
}

double stop_period_of(Route r, const SynthCalib& c) {
    switch (r) {
    case Route::Urban: return c.urban_stop_period_s;
    case Route::Suburban: return c.suburban_stop_period_s;
    case Route::Highway: return 0.0; // no stops
    }
    return 0.0;
}

double accel_cap_of(Style s, const SynthCalib& c) {
    switch (s) {
    case Style::Quiet: return c.quiet_accel;
    case Style::Normal: return c.normal_accel;
    case Style::Aggressive: return c.aggressive_accel;
    }
    return 0.0;
}

double jitter_of(Style s, const SynthCalib& c) {
    switch (s) {
    case Style::Quiet: return c.quiet_jitter_kmh;
    case Style::Normal: return c.normal_jitter_kmh;
    case Style::Aggressive: return c.aggressive_jitter_kmh;
    }
    return 0.0;
}

double retarget_of(Style s, const SynthCalib& c) {
    switch (s) {
    case Style::Quiet: return c.quiet_retarget_s;
    case Style::Normal: return c.normal_retarget_s;
    case Style::Aggressive: return c.aggressive_retarget_s;
    }
    return 1.0;
}

double rev_offset_of(Style s, const SynthCalib& c) {
    switch (s) {
    case Style::Quiet: return c.quiet_rev_offset;
    case Style::Normal: return c.normal_rev_offset;
    case Style::Aggressive: return c.aggressive_rev_offset;
    }
    return 0.0;
}

// Gear map: rpm from road speed, plus style offset and an accel bump.
double rpm_at(double speed_kmh, double accel_mps2, Style style,
              const SynthCalib& c) {
    if (speed_kmh < 0.5) return c.idle_rpm;
    std::size_t gear = 0;
    while (gear < c.shift_kmh.size() && speed_kmh >= c.shift_kmh[gear]) ++gear;
    double rpm = speed_kmh * c.rpm_per_kmh[gear] + rev_offset_of(style, c);
    rpm += std::max(accel_mps2, 0.0) * c.accel_rev_per_mps2;
    return std::clamp(rpm, c.idle_rpm, c.max_rpm);
}

// Absolute load fraction demanded at this operating point.
double load_at(double speed_kmh, double accel_mps2, double rpm,
               const SynthCalib& c) {
    const double v = speed_kmh / 3.6;
    if (v < 0.1) return c.idle_load_frac;
    const double f_roll = c.rolling_coef * c.vehicle_mass_kg * kGravity;
    const double f_aero = 0.5 * c.ambient_air_kgpm3 * c.drag_area_m2 * v * v;
    const double f_inertia = c.vehicle_mass_kg * accel_mps2;
    const double p_wheel_w = std::max(f_roll + f_aero + f_inertia, 0.0) * v;
    const double p_engine_kw =
        p_wheel_w / c.driveline_eff / 1000.0 + c.friction_kw_per_krpm * rpm / 1000.0;
    const double p_capacity_kw = c.power_per_krpm_kw * rpm / 1000.0;
    return std::clamp(p_engine_kw / p_capacity_kw, c.idle_load_frac, 1.0);
}

} // namespace

const char* to_string(Route r) {
    switch (r) {
    case Route::Urban: return "urban";
    case Route::Suburban: return "suburban";
    case Route::Highway: return "highway";
    }
    return "?";
}

const char* to_string(Style s) {
    switch (s) {
    case Style::Quiet: return "quiet";
    case Style::Normal: return "normal";
    case Style::Aggressive: return "aggressive";
    }
    return "?";
}

Route route_from_string(const std::string& s) {
    if (s == "urban") return Route::Urban;
    if (s == "suburban") return Route::Suburban;
    if (s == "highway") return Route::Highway;
    throw BadSpec("unknown route type '" + s + "'");
}

Style style_from_string(const std::string& s) {
    if (s == "quiet") return Style::Quiet;
    if (s == "normal") return Style::Normal;
    if (s == "aggressive") return Style::Aggressive;
    throw BadSpec("unknown driving style '" + s + "'");
}

void ScenarioSpec::validate() const {
    if (duration_s < 30) {
        throw BadSpec("scenario duration must be >= 30 s, got " +
                      std::to_string(duration_s));
    }
    if (!(noise_level >= 0.0 && noise_level <= 0.5)) {
        throw BadSpec("noise level outside [0, 0.5]");
    }
}

Trip generate(const ScenarioSpec& spec, const VehicleProfile& profile,
              const SynthCalib& calib) {
    spec.validate();
    profile.validate();

    rng::Generator gen(rng::mix(spec.seed, (static_cast<std::uint64_t>(spec.route) << 8) |
                                               static_cast<std::uint64_t>(spec.style)));

    const Band band = band_of(spec.route, calib);
    const double stop_period = stop_period_of(spec.route, calib);
    const double accel_cap = accel_cap_of(spec.style, calib);
    const double jitter = jitter_of(spec.style, calib);
    const double retarget_period = retarget_of(spec.style, calib);
    const double iat_c = gen.uniform(calib.iat_min_c, calib.iat_max_c);

    // Traffic (stop schedule, dwell lengths, starting speed) comes from a
    // stream keyed by seed and route only, so each scenario seed confronts
    // every style with the same outside world. Without this pairing, a quiet
    // run that happens to catch one extra red light out-consumes a normal one
    // and style comparisons need many seeds to average back out.
    rng::Generator traffic(
        rng::mix(spec.seed, 0xEC0ULL + static_cast<std::uint64_t>(spec.route)));
    std::vector<char> stop_at(static_cast<std::size_t>(spec.duration_s), 0);
    std::vector<double> stop_dwell;
    if (stop_period > 0.0) {
        for (int t = 0; t < spec.duration_s; ++t) {
            if (traffic.uniform() < 1.0 / stop_period) {
                stop_at[static_cast<std::size_t>(t)] = 1;
                stop_dwell.push_back(
                    traffic.uniform(calib.stop_dwell_min_s, calib.stop_dwell_max_s));
            }
        }
    }
    const double start_dwell = traffic.uniform(2.0, 6.0);
    // One nominal cruise speed per (seed, route), shared by all styles: style
    // changes how the driver oscillates around the traffic flow, not which
    // flow they are in. Otherwise mean-speed luck (aero grows with v^2)
    // drowns the per-style signal.
    const double band_w = band.hi - band.lo;
    const double flow_center =
        traffic.uniform(band.lo + 0.25 * band_w, band.hi - 0.25 * band_w);

    auto pick_target = [&]() {
        return std::clamp(flow_center + gen.uniform(-jitter, jitter), band.lo, band.hi);
    };

    // Acceleration the driveline can actually deliver at this speed; beyond
    // it the style cap is moot. Keeps every granted km/h payable in fuel.
    auto accel_avail = [&](double v_kmh) {
        const double v = std::max(v_kmh / 3.6, 0.5);
        const double rpm = rpm_at(v_kmh, 0.0, spec.style, calib);
        const double p_wheel_max_w = (calib.power_per_krpm_kw - calib.friction_kw_per_krpm) *
                                     rpm * calib.driveline_eff;
        const double f_roll = calib.rolling_coef * calib.vehicle_mass_kg * kGravity;
        const double f_aero = 0.5 * calib.ambient_air_kgpm3 * calib.drag_area_m2 * v * v;
        const double a = (p_wheel_max_w / v - f_roll - f_aero) / calib.vehicle_mass_kg;
        return std::clamp(a, 0.05, 8.0);
    };

    // Urban trips start at a standstill, faster routes start inside the band.
    double speed = spec.route == Route::Urban ? 0.0 : flow_center;
    double target = pick_target();
    int dwell_left = spec.route == Route::Urban ? static_cast<int>(start_dwell) : 0;
    bool braking_to_stop = false;
    std::size_t next_stop = 0;
    double pending_dwell = calib.stop_dwell_min_s;

    // Pass 1: clean speed trajectory at 1 Hz.
    std::vector<double> clean(static_cast<std::size_t>(spec.duration_s), 0.0);
    for (int t = 0; t < spec.duration_s; ++t) {
        // Consume the schedule unconditionally to stay aligned across styles.
        double event_dwell = -1.0;
        if (stop_at[static_cast<std::size_t>(t)]) {
            event_dwell = stop_dwell[next_stop];
            ++next_stop;
        }
        if (dwell_left > 0) {
            speed = 0.0;
            --dwell_left;
            if (dwell_left == 0) target = pick_target();
        } else {
            if (braking_to_stop) {
                target = 0.0;
            } else if (event_dwell >= 0.0 && speed > band.lo * 0.5) {
                braking_to_stop = true;
                pending_dwell = event_dwell;
                target = 0.0;
            } else if (gen.uniform() < 1.0 / retarget_period &&
                       std::abs(speed - target) < 3.0) {
                target = pick_target();
            }
            const double dv_want = (target - speed) / 3.6; // m/s in one second
            const double ease = gen.uniform(0.65, 1.0);
            const double up = std::min(accel_cap, accel_avail(speed)) * ease;
            const double down = accel_cap * ease;
            const double dv = std::clamp(dv_want, -down, up);
            speed = std::max(speed + dv * 3.6, 0.0);
            if (braking_to_stop && speed <= 0.5) {
                speed = 0.0;
                braking_to_stop = false;
                dwell_left = static_cast<int>(pending_dwell);
            }
        }
        clean[static_cast<std::size_t>(t)] = speed;
    }

    // Pass 2: measurement jitter on speed and rpm, then channels re-derived
    // from the recorded values so every fuel path agrees.
    const double speed_sigma = spec.noise_level * calib.speed_noise_kmh;
    const double rpm_sigma = spec.noise_level * calib.rpm_noise;
    const double disp_l = profile.engine_disp_cc / 1000.0;

    std::vector<Sample> samples;
    samples.reserve(clean.size());
    double prev_recorded = clean.empty() ? 0.0 : clean.front();
    for (std::size_t i = 0; i < clean.size(); ++i) {
        double v = clean[i];
        if (v > 0.0 && speed_sigma > 0.0) {
            v = std::clamp(v + gen.normal(0.0, speed_sigma), 0.0, 250.0);
        }
        const double accel = i == 0 ? 0.0 : (v - prev_recorded) / 3.6;
        prev_recorded = v;

        double rpm = rpm_at(v, accel, spec.style, calib);
        if (v > 0.0 && rpm_sigma > 0.0) {
            rpm = std::clamp(rpm + gen.normal(0.0, rpm_sigma), calib.idle_rpm * 0.8,
                             calib.max_rpm * 1.05);
        }

        const double load = load_at(v, accel, rpm, calib);
        const double maf = load * profile.air_density_stp_gpl * disp_l * rpm / 120.0;
        const double t_k = iat_c + 273.15;
        const double map_kpa = maf * 120.0 * t_k * profile.gas_constant_jpmolk /
                               (rpm * profile.volumetric_eff * disp_l *
                                profile.air_molar_mass_gpmol);

        Sample s;
        s.t_ms = static_cast<std::int64_t>(i) * 1000;
        s.speed_kmh = v;
        s.rpm = rpm;
        s.maf_gps = maf;
        s.abs_load_pct = load * 100.0;
        s.map_kpa = map_kpa;
        s.iat_c = iat_c;
        s.fuel_rate_lph = fuel::fuel_flow_from_maf(maf, profile);
        samples.push_back(s);
    }

    TripMeta meta;
    meta.id = std::string(to_string(spec.route)) + "_" + to_string(spec.style) +
              "_s" + std::to_string(spec.seed);
    meta.period_ms = 1000;
    return Trip(std::move(samples), profile, std::move(meta));
}

Corpus generate_corpus(int n_per_class, std::uint64_t seed, int duration_s,
                       double noise_level, const VehicleProfile& profile,
                       const SynthCalib& calib) {
    if (n_per_class < 1) throw BadSpec("n_per_class must be >= 1");
    Corpus corpus;
    int trip_index = 0;
    for (int r = 0; r < kRouteCount; ++r) {
        for (int s = 0; s < kStyleCount; ++s) {
            for (int n = 0; n < n_per_class; ++n, ++trip_index) {
                ScenarioSpec spec;
                spec.route = static_cast<Route>(r);
                spec.style = static_cast<Style>(s);
                spec.duration_s = duration_s;
                spec.noise_level = noise_level;
                spec.seed = rng::mix(seed, static_cast<std::uint64_t>(trip_index));
                Trip trip = generate(spec, profile, calib);

                char idbuf[16];
                std::snprintf(idbuf, sizeof(idbuf), "trip_%03d", trip_index);
                TripMeta meta = trip.meta();
                meta.id = std::string(idbuf) + "_" + to_string(spec.route) + "_" +
                          to_string(spec.style);
                corpus.trips.emplace_back(trip.samples(), profile, meta);
                corpus.labels.emplace_back(spec.route, spec.style);
            }
        }
    }
    return corpus;
}

} // namespace ecotrip::synth
