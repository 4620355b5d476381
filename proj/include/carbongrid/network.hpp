#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "carbongrid/fuel.hpp"

namespace carbongrid {

struct Bus {
    int id = 0;              // external bus number from the source case
    double load_mw = 0.0;    // nominal active demand
    bool has_load = false;   // marks membership in the parameter vector P^D
    bool is_reference = false;
};

/// Flows are signed positive in the from->to direction; the limits are
/// interpreted in that frame.
struct Branch {
    int from_bus = 0;  // internal bus index
    int to_bus = 0;    // internal bus index
    double reactance = 0.0;  // per unit, > 0
    double flow_min = 0.0;   // MW, <= 0
    double flow_max = 0.0;   // MW, >= 0
};

struct Generator {
    int id = 0;   // dense generator index, also the fuel-dictionary key
    int bus = 0;  // internal bus index
    double cost_linear = 0.0;     // $/MWh
    double cost_quadratic = 0.0;  // $/MWh^2, zero for the linear case
    double p_min = 0.0;           // MW
    double p_max = 0.0;           // MW
    std::optional<FuelType> fuel; // set by enrichment (or case metadata)
    EmissionMetric metric = EmissionMetric::CO2;
    double intensity = 0.0;       // t/MWh, emission_intensity(fuel, metric)
};

/// Immutable network snapshot. Load buses are the buses flagged `has_load`,
/// ordered as in `buses`; P^D vectors across the toolkit follow that order.
struct Network {
    std::string name;
    double base_mva = 100.0;
    std::vector<Bus> buses;
    std::vector<Branch> branches;
    std::vector<Generator> generators;
    int slack_bus = 0;  // internal bus index

    int num_buses() const { return static_cast<int>(buses.size()); }
    int num_branches() const { return static_cast<int>(branches.size()); }
    int num_generators() const { return static_cast<int>(generators.size()); }

    /// Internal indices of the load buses, in bus order.
    std::vector<int> load_buses() const;
    int num_loads() const;

    /// Nominal P^D over the load buses.
    Eigen::VectorXd nominal_load() const;

    /// Emission intensity vector e^G over generators.
    Eigen::VectorXd intensity_vector() const;

    /// Internal index of the bus with external number `bus_id`, or -1.
    int bus_index(int bus_id) const;

    /// Throws StructuralError on dangling indices, non-positive reactances,
    /// inverted limits or a disconnected graph.
    void validate() const;
};

/// Groups generator indices by the bus they connect to; every bus gets an
/// entry, generator-free buses map to empty lists.
std::vector<std::vector<int>> bus_generator_map(const Network& net);

/// Positions within the P^D vector whose buses host no generator.
std::vector<int> non_generator_load_indices(const Network& net);

/// Positions of the k largest nominal loads within the P^D vector.
std::vector<int> top_load_indices(const Network& net, int k);

} // namespace carbongrid
