#pragma once

#include <iosfwd>
#include <string>

#include <Eigen/Dense>

#include "carbongrid/fuel.hpp"

namespace carbongrid {

/// One timed benchmark observation; lmce vectors are comparable across
/// methods for the same scenario id.
struct BenchRecord {
    int scenario = 0;
    std::string method;  // "exact" or "mpp"
    double wall_us = 0.0;
    Eigen::VectorXd lmce;
    int region = -1;  // mpp only
};

/// Flag bundle shared by the CLI commands; flags map onto it one-to-one.
struct RunConfig {
    std::string case_path;       // MATPOWER .m input
    std::string fuel_dict_path;  // optional sidecar JSON
    std::string enriched_path;   // enriched-case JSON
    std::string table_path;      // region-table binary
    std::string loads_path;      // scenario CSV
    std::string output_path;     // written artifact (enrich/mpp build)
    std::string format = "table";     // table | json | csv
    std::string method = "exact";     // exact | mpp | fd
    std::string compare_with;         // second method for --compare
    std::string vary = "all";         // all | nongen | topN | comma-separated bus ids
    std::string default_fuel = "NG";
    EmissionMetric metric = EmissionMetric::CO2;
    std::string cost_kind = "auto";   // auto | linear | quadratic
    int slack_bus = -1;               // external bus number override
    double domain_low = 80.0;         // percent of nominal
    double domain_high = 120.0;
    double fd_step = 0.0;             // 0 = default rule
    double tax = 0.0;                 // $/t
    int scenarios = 1000;
    unsigned seed = 1;
    std::string bind_host = "127.0.0.1";
    int bind_port = 8080;
};

// exit codes: 0 success, 1 computational failure, 2 usage/input error
inline constexpr int kExitOk = 0;
inline constexpr int kExitComputational = 1;
inline constexpr int kExitUsage = 2;

/// Name of the optional environment variable holding a JSON file of default
/// flag values; explicit flags always win.
inline constexpr const char* kConfigEnvVar = "CARBONGRID_CONFIG";

/// Applies the environment-provided defaults file to `cfg` when the
/// variable is set. Unknown keys are reported to `err` and skipped.
void apply_environment_config(RunConfig& cfg, std::ostream& err);

int cmd_enrich(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_opf(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_metrics(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_lmce(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_mpp_build(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_mpp_query(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_bench(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_serve(const RunConfig& cfg, std::ostream& out, std::ostream& err);

} // namespace carbongrid
