#pragma once

#include <filesystem>
#include <vector>

#include <Eigen/Dense>

namespace carbongrid {

/// Load scenarios: a header row of load-bus numbers, one scenario per row,
/// megawatts throughout.
struct LoadScenarios {
    std::vector<int> bus_ids;
    Eigen::MatrixXd values;  // scenarios x buses

    int count() const { return static_cast<int>(values.rows()); }
};

LoadScenarios read_loads_csv(const std::filesystem::path& path);
void write_loads_csv(const std::filesystem::path& path, const LoadScenarios& scenarios);

/// Reorders scenario columns onto the target P^D layout. Buses missing from
/// the file keep their nominal value; unknown file columns are an error.
Eigen::MatrixXd align_scenarios(const LoadScenarios& scenarios,
                                const std::vector<int>& target_bus_ids,
                                const Eigen::VectorXd& nominal);

} // namespace carbongrid
