#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "carbongrid/cli.hpp"
#include "carbongrid/version.hpp"

using carbongrid::RunConfig;

namespace {

void add_metric_flag(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option_function<std::string>(
           "--metric",
           [&cfg](const std::string& value) {
               const auto metric = carbongrid::metric_from_string(value);
               if (!metric) {
                   throw CLI::ValidationError("--metric must be CO2 or CO2e");
               }
               cfg.metric = *metric;
           },
           "Emission metric for default fuel assignments (CO2 or CO2e)")
        ->default_str("CO2");
}

void add_format_flag(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--format", cfg.format, "Output format: table, json or csv")
        ->check(CLI::IsMember({"table", "json", "csv"}))
        ->capture_default_str();
}

void add_domain_flags(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--domain-low", cfg.domain_low, "Lower bound, percent of nominal load")
        ->capture_default_str();
    cmd->add_option("--domain-high", cfg.domain_high, "Upper bound, percent of nominal load")
        ->capture_default_str();
    cmd->add_option("--vary", cfg.vary,
                    "Which loads vary: all, nongen, top<k>, or a comma-separated bus list")
        ->capture_default_str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"carbon-aware DC optimal power flow toolkit"};
    app.set_version_flag("--version", std::string("carbongrid ") + carbongrid::kVersion);
    app.require_subcommand(1);

    RunConfig cfg;
    carbongrid::apply_environment_config(cfg, std::cerr);
    int exit_code = carbongrid::kExitOk;

    auto* enrich = app.add_subcommand("enrich", "Attach fuel types and emission intensities");
    enrich->add_option("--case", cfg.case_path, "MATPOWER .m case file")->required();
    enrich->add_option("--fuel-dict", cfg.fuel_dict_path, "Fuel dictionary sidecar JSON");
    enrich->add_option("--default-fuel", cfg.default_fuel,
                       "Fuel for generators without metadata")
        ->capture_default_str();
    enrich->add_option("--slack-bus", cfg.slack_bus, "Reference bus override (bus number)");
    enrich->add_option("-o,--output", cfg.output_path, "Enriched case output path");
    add_metric_flag(enrich, cfg);
    add_format_flag(enrich, cfg);
    enrich->callback([&]() { exit_code = cmd_enrich(cfg, std::cout, std::cerr); });

    auto* opf = app.add_subcommand("opf", "Solve the DC optimal power flow");
    opf->add_option("--enriched", cfg.enriched_path, "Enriched case JSON")->required();
    opf->add_option("--loads", cfg.loads_path, "Scenario CSV (default: nominal load)");
    opf->add_option("--cost", cfg.cost_kind, "Cost model: auto, linear or quadratic")
        ->capture_default_str();
    opf->add_option("--tax", cfg.tax, "Carbon tax rate in $/t added to the objective");
    add_format_flag(opf, cfg);
    opf->callback([&]() { exit_code = cmd_opf(cfg, std::cout, std::cerr); });

    auto* metrics = app.add_subcommand("metrics", "Emission accounting for dispatched scenarios");
    metrics->add_option("--enriched", cfg.enriched_path, "Enriched case JSON")->required();
    metrics->add_option("--loads", cfg.loads_path, "Scenario CSV (default: nominal load)");
    metrics->add_option("--cost", cfg.cost_kind, "Cost model: auto, linear or quadratic")
        ->capture_default_str();
    metrics->add_option("--tax", cfg.tax, "Carbon tax rate in $/t");
    add_format_flag(metrics, cfg);
    metrics->callback([&]() { exit_code = cmd_metrics(cfg, std::cout, std::cerr); });

    auto* lmce = app.add_subcommand("lmce", "Locational marginal carbon emissions");
    lmce->add_option("--enriched", cfg.enriched_path, "Enriched case JSON")->required();
    lmce->add_option("--loads", cfg.loads_path, "Scenario CSV (default: nominal load)");
    lmce->add_option("--method", cfg.method, "exact, fd or mpp")
        ->check(CLI::IsMember({"exact", "fd", "mpp"}))
        ->capture_default_str();
    lmce->add_option("--compare", cfg.compare_with, "Second method for deviation statistics")
        ->check(CLI::IsMember({"exact", "fd", "mpp"}));
    lmce->add_option("--table", cfg.table_path, "Region table (for method mpp)");
    lmce->add_option("--fd-step", cfg.fd_step, "Finite-difference step in MW (0 = default rule)");
    lmce->add_option("--cost", cfg.cost_kind, "Cost model: auto, linear or quadratic")
        ->capture_default_str();
    add_format_flag(lmce, cfg);
    lmce->callback([&]() { exit_code = cmd_lmce(cfg, std::cout, std::cerr); });

    auto* mpp = app.add_subcommand("mpp", "Multiparametric region table workflows");
    mpp->require_subcommand(1);
    auto* build = mpp->add_subcommand("build", "Enumerate critical regions offline");
    build->add_option("--enriched", cfg.enriched_path, "Enriched case JSON")->required();
    build->add_option("-o,--output", cfg.output_path, "Region table output path")->required();
    build->add_option("--cost", cfg.cost_kind, "Cost model (must resolve to linear)")
        ->capture_default_str();
    build->add_option("--seed", cfg.seed, "Exploration RNG seed")->capture_default_str();
    add_domain_flags(build, cfg);
    build->callback([&]() { exit_code = cmd_mpp_build(cfg, std::cout, std::cerr); });

    auto* query = mpp->add_subcommand("query", "Answer LMCE/LMP queries from a table");
    query->add_option("--enriched", cfg.enriched_path, "Enriched case JSON")->required();
    query->add_option("--table", cfg.table_path, "Region table")->required();
    query->add_option("--loads", cfg.loads_path, "Scenario CSV (default: nominal load)");
    add_format_flag(query, cfg);
    query->callback([&]() { exit_code = cmd_mpp_query(cfg, std::cout, std::cerr); });

    auto* bench = app.add_subcommand("bench", "Exact-vs-table timing comparison");
    bench->add_option("--enriched", cfg.enriched_path, "Enriched case JSON")->required();
    bench->add_option("--table", cfg.table_path, "Region table")->required();
    bench->add_option("--scenarios", cfg.scenarios, "Scenario count")->capture_default_str();
    bench->add_option("--seed", cfg.seed, "Scenario RNG seed")->capture_default_str();
    add_format_flag(bench, cfg);
    bench->callback([&]() { exit_code = cmd_bench(cfg, std::cout, std::cerr); });

    auto* serve = app.add_subcommand("serve", "HTTP JSON endpoint over a region table");
    serve->add_option("--table", cfg.table_path, "Region table")->required();
    serve->add_option("--enriched", cfg.enriched_path,
                      "Enriched case JSON (enables the staleness check)");
    serve->add_option("--host", cfg.bind_host, "Bind address")->capture_default_str();
    serve->add_option("--port", cfg.bind_port, "Bind port")->capture_default_str();
    serve->callback([&]() { exit_code = cmd_serve(cfg, std::cout, std::cerr); });

    CLI11_PARSE(app, argc, argv);
    return exit_code;
}
