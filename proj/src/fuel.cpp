#include "carbongrid/fuel.hpp"

namespace carbongrid {

std::string_view to_string(FuelType fuel) {
    switch (fuel) {
    case FuelType::ANT: return "ANT";
    case FuelType::COW: return "COW";
    case FuelType::PEL: return "PEL";
    case FuelType::NG: return "NG";
    case FuelType::CCGT: return "CCGT";
    case FuelType::ICE: return "ICE";
    case FuelType::NUC: return "NUC";
    case FuelType::WIND: return "WIND";
    case FuelType::SOLAR: return "SOLAR";
    case FuelType::HYDRO: return "HYDRO";
    }
    return "?";
}

std::string_view to_string(EmissionMetric metric) {
    return metric == EmissionMetric::CO2 ? "CO2" : "CO2e";
}

std::optional<FuelType> fuel_from_string(std::string_view code) {
    for (FuelType fuel : all_fuel_types) {
        if (code == to_string(fuel)) {
            return fuel;
        }
    }
    return std::nullopt;
}

std::optional<EmissionMetric> metric_from_string(std::string_view name) {
    if (name == "CO2") {
        return EmissionMetric::CO2;
    }
    if (name == "CO2e") {
        return EmissionMetric::CO2e;
    }
    return std::nullopt;
}

} // namespace carbongrid
