#include "carbongrid/metrics.hpp"

#include "carbongrid/errors.hpp"

namespace carbongrid {

EmissionReport emission_report(const EnrichedNetwork& net, const Eigen::VectorXd& dispatch,
                               const Eigen::VectorXd& load) {
    const Network& network = net.network;
    if (dispatch.size() != network.num_generators()) {
        throw ContractError("dispatch vector does not match the generator count");
    }
    if (load.size() != network.num_loads()) {
        throw ContractError("load vector does not match the load-bus count");
    }
    for (Eigen::Index g = 0; g < dispatch.size(); ++g) {
        if (dispatch[g] < 0.0) {
            throw ContractError("dispatch entries must be nonnegative");
        }
    }

    EmissionReport report;
    report.per_generator = network.intensity_vector().cwiseProduct(dispatch);
    report.per_bus = Eigen::VectorXd::Zero(network.num_buses());
    for (int g = 0; g < network.num_generators(); ++g) {
        report.per_bus[network.generators[g].bus] += report.per_generator[g];
    }
    report.total = report.per_generator.sum();
    report.total_load = load.sum();
    if (report.total_load > 0.0) {
        report.ace = report.total / report.total_load;
    }
    return report;
}

double carbon_cost(const EnrichedNetwork& net, const Eigen::VectorXd& dispatch, CarbonTax tax) {
    if (tax.rate < 0.0) {
        throw ContractError("carbon tax rate must be nonnegative");
    }
    if (dispatch.size() != net.network.num_generators()) {
        throw ContractError("dispatch vector does not match the generator count");
    }
    return tax.rate * net.network.intensity_vector().dot(dispatch);
}

CostModel taxed_cost_model(const CostModel& cost, const EnrichedNetwork& net, CarbonTax tax) {
    if (tax.rate < 0.0) {
        throw ContractError("carbon tax rate must be nonnegative");
    }
    cost.validate(net.network.num_generators());
    CostModel taxed = cost;
    taxed.linear += tax.rate * net.network.intensity_vector();
    return taxed;
}

} // namespace carbongrid
