#include "ecotrip/fuel.hpp"

#include <cmath>

namespace ecotrip::fuel {

namespace {
constexpr double kZeroCelsiusK = 273.15;
}

const char* to_string(Method m) {
    switch (m) {
    case Method::DirectPid: return "direct_pid";
    case Method::FromMaf: return "from_maf";
    case Method::MafFromLoad: return "maf_from_load";
    case Method::MafFromMap: return "maf_from_map";
    }
    return "?";
}

double fuel_flow_from_maf(double maf_gps, const VehicleProfile& p) {
    return maf_gps * 3600.0 / (p.afr * p.fuel_density_gpl);
}

double maf_from_load(double abs_load_pct, double rpm, const VehicleProfile& p) {
    const double disp_l = p.engine_disp_cc / 1000.0;
    return (abs_load_pct / 100.0) * p.air_density_stp_gpl * disp_l * rpm / 120.0;
}

double maf_from_map(double map_kpa, double rpm, double iat_c,
                    const VehicleProfile& p) {
    if (!(iat_c > -kZeroCelsiusK)) {
        throw InvalidTemperature("intake air temperature below absolute zero");
    }
    const double t_k = iat_c + kZeroCelsiusK;
    const double disp_l = p.engine_disp_cc / 1000.0;
    return (rpm * map_kpa / t_k) / 120.0 * p.volumetric_eff * disp_l *
           p.air_molar_mass_gpmol / p.gas_constant_jpmolk;
}

std::optional<FuelEstimate> try_estimate(const Sample& s, const VehicleProfile& p) {
    FuelEstimate e;
    if (s.fuel_rate_lph) {
        e.fuel_flow_lph = *s.fuel_rate_lph;
        e.method = Method::DirectPid;
    } else if (s.maf_gps) {
        e.fuel_flow_lph = fuel_flow_from_maf(*s.maf_gps, p);
        e.method = Method::FromMaf;
    } else if (s.abs_load_pct) {
        e.fuel_flow_lph = fuel_flow_from_maf(maf_from_load(*s.abs_load_pct, s.rpm, p), p);
        e.method = Method::MafFromLoad;
    } else if (s.map_kpa && s.iat_c) {
        e.fuel_flow_lph =
            fuel_flow_from_maf(maf_from_map(*s.map_kpa, s.rpm, *s.iat_c, p), p);
        e.method = Method::MafFromMap;
    } else {
        return std::nullopt;
    }
    if (s.speed_kmh > 0.0) {
        e.l_per_100km = e.fuel_flow_lph / s.speed_kmh * 100.0;
    }
    return e;
}

FuelEstimate estimate(const Sample& s, const VehicleProfile& p) {
    auto e = try_estimate(s, p);
    if (!e) {
        throw NoUsableChannels(
            "sample carries neither fuel_rate, maf, abs_load nor map+iat");
    }
    return *e;
}

double co2_per_liter_kg(const VehicleProfile& p) {
    return p.co2_mass_ratio * p.carbon_fraction * p.co2_fuel_density_kgpl;
}

TripTotals span_totals(std::span<const Sample> samples, std::int64_t period_ms,
                       const VehicleProfile& p) {
    TripTotals t;
    t.samples_total = samples.size();
    const double dt_h = static_cast<double>(period_ms) / 3.6e6;
    for (const Sample& s : samples) {
        t.km += s.speed_kmh * dt_h;
        if (auto e = try_estimate(s, p)) {
            t.liters += e->fuel_flow_lph * dt_h;
            ++t.samples_used;
        }
    }
    if (t.samples_used == 0) {
        throw NoUsableChannels("no sample offers a usable fuel path");
    }
    t.co2_kg = t.liters * co2_per_liter_kg(p);
    if (t.km > 0.0) {
        t.l_per_100km = t.liters / t.km * 100.0;
        t.co2_kg_per_100km = t.co2_kg / t.km * 100.0;
    }
    return t;
}

TripTotals trip_totals(const Trip& trip, const VehicleProfile& p) {
    return span_totals(trip.samples(), trip.meta().period_ms, p);
}

} // namespace ecotrip::fuel
