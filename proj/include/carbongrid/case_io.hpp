#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "carbongrid/network.hpp"

namespace carbongrid {

/// Sink for non-fatal parser/enrichment notices (ignored fields, fuel
/// fallbacks). Defaults to dropping them.
using NoticeSink = std::function<void(const std::string&)>;

struct ParseOptions {
    /// Internal index of the slack bus; -1 selects the first reference bus
    /// from the case file.
    int slack_bus_override = -1;
    /// Substitute for a zero (= unlimited) MATPOWER rateA, in MW.
    double unlimited_flow_mw = 1e6;
    NoticeSink notice;
};

/// Parses the bus/gen/branch/gencost (and optional genfuel) blocks of a
/// MATPOWER .m case. Polynomial costs up to degree 2 only; fields irrelevant
/// to the DC formulation are ignored with a notice.
Network parse_matpower_case(std::string_view text, const ParseOptions& opts = {});
Network parse_matpower_file(const std::filesystem::path& path, const ParseOptions& opts = {});

struct FuelAssignment {
    FuelType fuel = FuelType::NG;
    EmissionMetric metric = EmissionMetric::CO2;
};

/// One entry per generator id; CO2 is the default metric.
struct FuelDictionary {
    std::map<int, FuelAssignment> entries;

    bool covers(const Network& net) const;
};

/// Builds the per-generator fuel dictionary: fuel from case metadata when
/// present, otherwise `default_fuel`; the metric defaults to CO2 everywhere.
FuelDictionary fuel_dict_generation(const Network& net, FuelType default_fuel = FuelType::NG,
                                    const NoticeSink& notice = {});

/// Sidecar document {generator_id: {"type": code, "emissions": "CO2"|"CO2e"}}.
FuelDictionary load_fuel_dictionary(const std::filesystem::path& path);

struct Provenance {
    std::string source_case;
    std::string fuel_source;  // "case metadata", "sidecar <path>", "default <fuel>"
    std::string tool;
};

/// Network whose every generator carries a fuel type and the matching
/// Table-style intensity factor.
struct EnrichedNetwork {
    Network network;
    FuelDictionary dictionary;
    Provenance provenance;
};

/// Embeds fuel and intensity attributes into every generator. The dictionary
/// must cover all generators; unknown codes were rejected at dictionary load.
EnrichedNetwork carbon_casefile(const Network& net, const FuelDictionary& dict,
                                Provenance provenance = {});

/// Enriched-case JSON round trip; numeric fields survive bit-exactly.
void save_enriched(const EnrichedNetwork& enriched, const std::filesystem::path& path);
EnrichedNetwork load_enriched(const std::filesystem::path& path);

std::string enriched_to_json(const EnrichedNetwork& enriched);
EnrichedNetwork enriched_from_json(std::string_view json_text);

/// Stable 64-bit fingerprint of an enriched case; persisted region tables
/// refuse to load against a different fingerprint.
std::uint64_t case_fingerprint(const EnrichedNetwork& enriched);

} // namespace carbongrid
