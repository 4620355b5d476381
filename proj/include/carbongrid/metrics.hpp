#pragma once

#include <optional>

#include <Eigen/Dense>

#include "carbongrid/dcopf.hpp"

namespace carbongrid {

/// Emission accounting for one operating point. Works on any dispatch
/// vector, optimal or telemetry-sourced.
struct EmissionReport {
    Eigen::VectorXd per_generator;  // t/h
    Eigen::VectorXd per_bus;        // t/h, one entry per bus
    double total = 0.0;             // t/h
    std::optional<double> ace;      // t/MWh, empty at zero total load
    double total_load = 0.0;        // MW
};

EmissionReport emission_report(const EnrichedNetwork& net, const Eigen::VectorXd& dispatch,
                               const Eigen::VectorXd& load);

struct CarbonTax {
    double rate = 0.0;  // $/t
};

/// tau * R_tot for the given dispatch.
double carbon_cost(const EnrichedNetwork& net, const Eigen::VectorXd& dispatch, CarbonTax tax);

/// Adds tau * e_g to every generator's linear coefficient, leaving the
/// quadratic part untouched; the result drives the unchanged solver.
CostModel taxed_cost_model(const CostModel& cost, const EnrichedNetwork& net, CarbonTax tax);

} // namespace carbongrid
