#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace carbongrid {

/// Fuel taxonomy. Every code carries one CO2 and one CO2e intensity factor;
/// nuclear, wind, solar and hydro are carbon-free.
enum class FuelType {
    ANT,   // anthracite coal
    COW,   // bituminous coal
    PEL,   // distillate fuel oil
    NG,    // natural gas
    CCGT,  // gas combined cycle
    ICE,   // internal combustion engine
    NUC,   // nuclear
    WIND,
    SOLAR,
    HYDRO,
};

inline constexpr std::array<FuelType, 10> all_fuel_types = {
    FuelType::ANT,  FuelType::COW,  FuelType::PEL,   FuelType::NG,    FuelType::CCGT,
    FuelType::ICE,  FuelType::NUC,  FuelType::WIND,  FuelType::SOLAR, FuelType::HYDRO,
};

enum class EmissionMetric {
    CO2,
    CO2e,
};

/// Emission intensity in t/MWh for a (fuel, metric) pair. Total over the taxonomy.
constexpr double emission_intensity(FuelType fuel, EmissionMetric metric) {
    const bool e = metric == EmissionMetric::CO2e;
    switch (fuel) {
    case FuelType::ANT: return e ? 0.9143 : 0.9095;
    case FuelType::COW: return e ? 0.8230 : 0.8204;
    case FuelType::PEL: return e ? 0.7018 : 0.7001;
    case FuelType::NG: return e ? 0.5177 : 0.5173;
    case FuelType::CCGT: return e ? 0.3625 : 0.3621;
    case FuelType::ICE: return e ? 0.6049 : 0.6030;
    case FuelType::NUC:
    case FuelType::WIND:
    case FuelType::SOLAR:
    case FuelType::HYDRO: return 0.0;
    }
    return 0.0;
}

std::string_view to_string(FuelType fuel);
std::string_view to_string(EmissionMetric metric);

/// Strict lookup of a fuel code ("ANT", "NG", ...). Empty when unknown.
std::optional<FuelType> fuel_from_string(std::string_view code);
std::optional<EmissionMetric> metric_from_string(std::string_view name);

} // namespace carbongrid
