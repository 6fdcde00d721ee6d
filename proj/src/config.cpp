#include "ecotrip/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ecotrip::config {

using nlohmann::ordered_json;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << text;
}

ordered_json parse(const std::string& text, const char* what) {
    ordered_json j = ordered_json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError(std::string("malformed JSON in ") + what);
    return j;
}

template <typename T>
void get_if(const ordered_json& j, const char* key, T& out) {
    if (auto it = j.find(key); it != j.end()) out = it->get<T>();
}

void get_range(const ordered_json& j, const char* key, features::Range& r) {
    if (auto it = j.find(key); it != j.end()) {
        const auto v = it->get<std::vector<double>>();
        if (v.size() != 2) throw ParseError(std::string("range ") + key + " needs [min, max]");
        r.lo = v[0];
        r.hi = v[1];
    }
}

ordered_json range_json(const features::Range& r) {
    return ordered_json::array({r.lo, r.hi});
}

} // namespace

void AnalysisConfig::validate() const {
    ranges.validate();
    if (input_width != 6 && input_width != 4) {
        throw Error("config: input_width must be 6 or 4");
    }
    if (train_window_s < 1 || analyze_window_s < 1) {
        throw Error("config: window lengths must be >= 1 s");
    }
    if (!(idle_gate_kmh >= 0.0)) throw Error("config: idle gate must be >= 0");
    if (train.hidden < 1) throw Error("config: hidden layer needs >= 1 node");
    if (!(train.learning_rate > 0.0)) throw Error("config: learning rate must be > 0");
    if (train.max_cycles < 1) throw Error("config: max_cycles must be >= 1");
    if (!(train.holdout_frac >= 0.0 && train.holdout_frac < 1.0)) {
        throw Error("config: holdout_frac outside [0, 1)");
    }
    if (!(synth.noise_level >= 0.0 && synth.noise_level <= 0.5)) {
        throw Error("config: synth noise_level outside [0, 0.5]");
    }
}

VehicleProfile profile_from_json_text(const std::string& text) {
    const ordered_json j = parse(text, "profile");
    std::string fuel = "gasoline";
    get_if(j, "fuel", fuel);
    VehicleProfile p = fuel_type_from_string(fuel) == FuelType::Diesel
                           ? VehicleProfile::diesel()
                           : VehicleProfile::gasoline();
    get_if(j, "afr", p.afr);
    get_if(j, "fuel_density_gpl", p.fuel_density_gpl);
    get_if(j, "carbon_fraction", p.carbon_fraction);
    get_if(j, "co2_fuel_density_kgpl", p.co2_fuel_density_kgpl);
    get_if(j, "engine_displacement_cc", p.engine_disp_cc);
    get_if(j, "volumetric_efficiency", p.volumetric_eff);
    get_if(j, "air_density_stp_gpl", p.air_density_stp_gpl);
    get_if(j, "air_molar_mass_gpmol", p.air_molar_mass_gpmol);
    get_if(j, "gas_constant_jpmolk", p.gas_constant_jpmolk);
    get_if(j, "co2_mass_ratio", p.co2_mass_ratio);
    p.validate();
    return p;
}

VehicleProfile load_profile_file(const std::string& path) {
    return profile_from_json_text(read_file(path));
}

std::string profile_to_json_text(const VehicleProfile& p) {
    ordered_json j;
    j["fuel"] = to_string(p.fuel);
    j["afr"] = p.afr;
    j["fuel_density_gpl"] = p.fuel_density_gpl;
    j["carbon_fraction"] = p.carbon_fraction;
    j["co2_fuel_density_kgpl"] = p.co2_fuel_density_kgpl;
    j["engine_displacement_cc"] = p.engine_disp_cc;
    j["volumetric_efficiency"] = p.volumetric_eff;
    j["air_density_stp_gpl"] = p.air_density_stp_gpl;
    j["air_molar_mass_gpmol"] = p.air_molar_mass_gpmol;
    j["gas_constant_jpmolk"] = p.gas_constant_jpmolk;
    j["co2_mass_ratio"] = p.co2_mass_ratio;
    return j.dump(2) + "\n";
}

void save_profile_file(const VehicleProfile& p, const std::string& path) {
    write_file(path, profile_to_json_text(p));
}

AnalysisConfig config_from_json_text(const std::string& text) {
    const ordered_json j = parse(text, "config");
    AnalysisConfig c;
    if (auto f = j.find("features"); f != j.end()) {
        get_if(*f, "input_width", c.input_width);
        if (auto r = f->find("ranges"); r != f->end()) {
            get_range(*r, "mean_speed", c.ranges.mean_speed);
            get_range(*r, "std_speed", c.ranges.std_speed);
            get_range(*r, "mean_accel", c.ranges.mean_accel);
            get_range(*r, "std_accel", c.ranges.std_accel);
            get_range(*r, "mean_rpm", c.ranges.mean_rpm);
            get_range(*r, "std_rpm", c.ranges.std_rpm);
        }
    }
    if (auto w = j.find("windows"); w != j.end()) {
        get_if(*w, "train_s", c.train_window_s);
        get_if(*w, "analyze_s", c.analyze_window_s);
        get_if(*w, "idle_gate_kmh", c.idle_gate_kmh);
    }
    if (auto t = j.find("train"); t != j.end()) {
        get_if(*t, "hidden", c.train.hidden);
        get_if(*t, "learning_rate", c.train.learning_rate);
        get_if(*t, "max_cycles", c.train.max_cycles);
        get_if(*t, "target_sse", c.train.target_sse);
        get_if(*t, "init_range", c.train.init_range);
        get_if(*t, "shuffle", c.train.shuffle);
        get_if(*t, "target_softening", c.train.target_softening);
        get_if(*t, "holdout_frac", c.train.holdout_frac);
    }
    if (auto s = j.find("synth"); s != j.end()) {
        get_if(*s, "duration_s", c.synth.duration_s);
        get_if(*s, "noise_level", c.synth.noise_level);
        auto& k = c.synth.calib;
        get_if(*s, "urban_lo", k.urban_lo);
        get_if(*s, "urban_hi", k.urban_hi);
        get_if(*s, "suburban_lo", k.suburban_lo);
        get_if(*s, "suburban_hi", k.suburban_hi);
        get_if(*s, "highway_lo", k.highway_lo);
        get_if(*s, "highway_hi", k.highway_hi);
        get_if(*s, "urban_stop_period_s", k.urban_stop_period_s);
        get_if(*s, "suburban_stop_period_s", k.suburban_stop_period_s);
        get_if(*s, "stop_dwell_min_s", k.stop_dwell_min_s);
        get_if(*s, "stop_dwell_max_s", k.stop_dwell_max_s);
        get_if(*s, "quiet_accel", k.quiet_accel);
        get_if(*s, "normal_accel", k.normal_accel);
        get_if(*s, "aggressive_accel", k.aggressive_accel);
        get_if(*s, "quiet_jitter_kmh", k.quiet_jitter_kmh);
        get_if(*s, "normal_jitter_kmh", k.normal_jitter_kmh);
        get_if(*s, "aggressive_jitter_kmh", k.aggressive_jitter_kmh);
        get_if(*s, "quiet_retarget_s", k.quiet_retarget_s);
        get_if(*s, "normal_retarget_s", k.normal_retarget_s);
        get_if(*s, "aggressive_retarget_s", k.aggressive_retarget_s);
        get_if(*s, "shift_kmh", k.shift_kmh);
        get_if(*s, "rpm_per_kmh", k.rpm_per_kmh);
        get_if(*s, "idle_rpm", k.idle_rpm);
        get_if(*s, "max_rpm", k.max_rpm);
        get_if(*s, "quiet_rev_offset", k.quiet_rev_offset);
        get_if(*s, "normal_rev_offset", k.normal_rev_offset);
        get_if(*s, "aggressive_rev_offset", k.aggressive_rev_offset);
        get_if(*s, "accel_rev_per_mps2", k.accel_rev_per_mps2);
        get_if(*s, "vehicle_mass_kg", k.vehicle_mass_kg);
        get_if(*s, "rolling_coef", k.rolling_coef);
        get_if(*s, "drag_area_m2", k.drag_area_m2);
        get_if(*s, "ambient_air_kgpm3", k.ambient_air_kgpm3);
        get_if(*s, "driveline_eff", k.driveline_eff);
        get_if(*s, "power_per_krpm_kw", k.power_per_krpm_kw);
        get_if(*s, "friction_kw_per_krpm", k.friction_kw_per_krpm);
        get_if(*s, "idle_load_frac", k.idle_load_frac);
        get_if(*s, "iat_min_c", k.iat_min_c);
        get_if(*s, "iat_max_c", k.iat_max_c);
        get_if(*s, "speed_noise_kmh", k.speed_noise_kmh);
        get_if(*s, "rpm_noise", k.rpm_noise);
    }
    c.validate();
    return c;
}

AnalysisConfig load_config_file(const std::string& path) {
    return config_from_json_text(read_file(path));
}

std::string config_to_json_text(const AnalysisConfig& c) {
    ordered_json j;
    j["features"] = {
        {"input_width", c.input_width},
        {"ranges",
         {{"mean_speed", range_json(c.ranges.mean_speed)},
          {"std_speed", range_json(c.ranges.std_speed)},
          {"mean_accel", range_json(c.ranges.mean_accel)},
          {"std_accel", range_json(c.ranges.std_accel)},
          {"mean_rpm", range_json(c.ranges.mean_rpm)},
          {"std_rpm", range_json(c.ranges.std_rpm)}}},
    };
    j["windows"] = {{"train_s", c.train_window_s},
                    {"analyze_s", c.analyze_window_s},
                    {"idle_gate_kmh", c.idle_gate_kmh}};
    j["train"] = {{"hidden", c.train.hidden},
                  {"learning_rate", c.train.learning_rate},
                  {"max_cycles", c.train.max_cycles},
                  {"target_sse", c.train.target_sse},
                  {"init_range", c.train.init_range},
                  {"shuffle", c.train.shuffle},
                  {"target_softening", c.train.target_softening},
                  {"holdout_frac", c.train.holdout_frac}};
    const auto& k = c.synth.calib;
    j["synth"] = {{"duration_s", c.synth.duration_s},
                  {"noise_level", c.synth.noise_level},
                  {"urban_lo", k.urban_lo},
                  {"urban_hi", k.urban_hi},
                  {"suburban_lo", k.suburban_lo},
                  {"suburban_hi", k.suburban_hi},
                  {"highway_lo", k.highway_lo},
                  {"highway_hi", k.highway_hi},
                  {"urban_stop_period_s", k.urban_stop_period_s},
                  {"suburban_stop_period_s", k.suburban_stop_period_s},
                  {"stop_dwell_min_s", k.stop_dwell_min_s},
                  {"stop_dwell_max_s", k.stop_dwell_max_s},
                  {"quiet_accel", k.quiet_accel},
                  {"normal_accel", k.normal_accel},
                  {"aggressive_accel", k.aggressive_accel},
                  {"quiet_jitter_kmh", k.quiet_jitter_kmh},
                  {"normal_jitter_kmh", k.normal_jitter_kmh},
                  {"aggressive_jitter_kmh", k.aggressive_jitter_kmh},
                  {"quiet_retarget_s", k.quiet_retarget_s},
                  {"normal_retarget_s", k.normal_retarget_s},
                  {"aggressive_retarget_s", k.aggressive_retarget_s},
                  {"shift_kmh", k.shift_kmh},
                  {"rpm_per_kmh", k.rpm_per_kmh},
                  {"idle_rpm", k.idle_rpm},
                  {"max_rpm", k.max_rpm},
                  {"quiet_rev_offset", k.quiet_rev_offset},
                  {"normal_rev_offset", k.normal_rev_offset},
                  {"aggressive_rev_offset", k.aggressive_rev_offset},
                  {"accel_rev_per_mps2", k.accel_rev_per_mps2},
                  {"vehicle_mass_kg", k.vehicle_mass_kg},
                  {"rolling_coef", k.rolling_coef},
                  {"drag_area_m2", k.drag_area_m2},
                  {"ambient_air_kgpm3", k.ambient_air_kgpm3},
                  {"driveline_eff", k.driveline_eff},
                  {"power_per_krpm_kw", k.power_per_krpm_kw},
                  {"friction_kw_per_krpm", k.friction_kw_per_krpm},
                  {"idle_load_frac", k.idle_load_frac},
                  {"iat_min_c", k.iat_min_c},
                  {"iat_max_c", k.iat_max_c},
                  {"speed_noise_kmh", k.speed_noise_kmh},
                  {"rpm_noise", k.rpm_noise}};
    return j.dump(2) + "\n";
}

void save_config_file(const AnalysisConfig& c, const std::string& path) {
    write_file(path, config_to_json_text(c));
}

} // namespace ecotrip::config
