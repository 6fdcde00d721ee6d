#pragma once

#include <string>

#include "ecotrip/errors.hpp"

namespace ecotrip {

enum class FuelType { Gasoline, Diesel };

const char* to_string(FuelType f);
FuelType fuel_type_from_string(const std::string& s);

// Static vehicle parameters feeding the fuel and emission models.
//
// Two densities are carried on purpose: fuel_density_gpl enters the
// MAF-to-fuel-flow conversion, co2_fuel_density_kgpl enters the CO2 mass
// balance. The diesel defaults differ (720 g/l vs 0.84 kg/l); both are kept
// as-is rather than reconciled.
struct VehicleProfile {
    FuelType fuel = FuelType::Gasoline;
    double afr = 14.7;                    // g air per g fuel
    double fuel_density_gpl = 820.0;      // flow model
    double carbon_fraction = 0.866;       // mass basis, in [0,1]
    double co2_fuel_density_kgpl = 0.74;  // emission model
    double engine_disp_cc = 2000.0;
    double volumetric_eff = 0.85;         // fraction in (0,1]

    // Air constants for the derived-MAF paths; overridable via profile file.
    double air_density_stp_gpl = 1.184;
    double air_molar_mass_gpmol = 28.97;
    double gas_constant_jpmolk = 8.314;

    // kg of CO2 per kg of burnt carbon (44/12, rounded as commonly quoted).
    double co2_mass_ratio = 3.67;

    static VehicleProfile gasoline();
    static VehicleProfile diesel();

    void validate() const; // throws Error
};

} // namespace ecotrip
