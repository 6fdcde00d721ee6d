#include "ecotrip/profile.hpp"

namespace ecotrip {

const char* to_string(FuelType f) {
    return f == FuelType::Gasoline ? "gasoline" : "diesel";
}

FuelType fuel_type_from_string(const std::string& s) {
    if (s == "gasoline") return FuelType::Gasoline;
    if (s == "diesel") return FuelType::Diesel;
    throw Error("unknown fuel type '" + s + "'");
}

VehicleProfile VehicleProfile::gasoline() {
    return VehicleProfile{};
}

VehicleProfile VehicleProfile::diesel() {
    VehicleProfile p;
    p.fuel = FuelType::Diesel;
    p.afr = 14.5;
    p.fuel_density_gpl = 720.0;
    p.carbon_fraction = 0.857;
    p.co2_fuel_density_kgpl = 0.84;
    return p;
}

void VehicleProfile::validate() const {
    if (!(afr > 0.0)) throw Error("profile: afr must be positive");
    if (!(fuel_density_gpl > 0.0)) throw Error("profile: fuel density must be positive");
    if (!(carbon_fraction >= 0.0 && carbon_fraction <= 1.0)) {
        throw Error("profile: carbon fraction outside [0,1]");
    }
    if (!(co2_fuel_density_kgpl > 0.0)) {
        throw Error("profile: co2 fuel density must be positive");
    }
    if (!(engine_disp_cc > 0.0)) throw Error("profile: engine displacement must be positive");
    if (!(volumetric_eff > 0.0 && volumetric_eff <= 1.0)) {
        throw Error("profile: volumetric efficiency outside (0,1]");
    }
    if (!(air_density_stp_gpl > 0.0) || !(air_molar_mass_gpmol > 0.0) ||
        !(gas_constant_jpmolk > 0.0)) {
        throw Error("profile: air constants must be positive");
    }
}

} // namespace ecotrip
