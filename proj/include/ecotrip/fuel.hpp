#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "ecotrip/profile.hpp"
#include "ecotrip/trace.hpp"

namespace ecotrip::fuel {

// Fallback chain for obtaining fuel flow, in priority order.
enum class Method { DirectPid, FromMaf, MafFromLoad, MafFromMap };

const char* to_string(Method m);

struct FuelEstimate {
    double fuel_flow_lph = 0.0;
    Method method = Method::DirectPid;
    // Defined iff the vehicle is moving.
    std::optional<double> l_per_100km;
};

// Fuel flow from mass air flow: maf * 3600 / (afr * fuel density).
double fuel_flow_from_maf(double maf_gps, const VehicleProfile& p);

// MAF from absolute load: full-charge air mass at STP scaled by load,
// over intake cycles per second (rpm / 120 for a four-stroke engine).
double maf_from_load(double abs_load_pct, double rpm, const VehicleProfile& p);

// MAF by the speed-density method from manifold pressure, rpm and intake
// air temperature. Throws InvalidTemperature when iat <= -273.15.
double maf_from_map(double map_kpa, double rpm, double iat_c,
                    const VehicleProfile& p);

// Picks the first usable path: direct fuel-rate PID, measured MAF,
// MAF from load, MAF from MAP+IAT. nullopt when none applies.
std::optional<FuelEstimate> try_estimate(const Sample& s, const VehicleProfile& p);

// Same, but throws NoUsableChannels.
FuelEstimate estimate(const Sample& s, const VehicleProfile& p);

// kg of CO2 released per liter of fuel burnt.
double co2_per_liter_kg(const VehicleProfile& p);

struct TripTotals {
    double liters = 0.0;
    double km = 0.0;
    double co2_kg = 0.0;
    std::optional<double> l_per_100km;     // undefined when km == 0
    std::optional<double> co2_kg_per_100km;
    std::size_t samples_used = 0;          // samples with a usable fuel path
    std::size_t samples_total = 0;
};

// Left-rectangle integration: each sample's flow and speed are held for one
// nominal period. Throws NoUsableChannels when no sample has a fuel path.
TripTotals span_totals(std::span<const Sample> samples, std::int64_t period_ms,
                       const VehicleProfile& p);
TripTotals trip_totals(const Trip& trip, const VehicleProfile& p);

} // namespace ecotrip::fuel
