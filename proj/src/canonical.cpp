#include "carbongrid/canonical.hpp"

#include <cmath>

namespace carbongrid {

CanonicalForm build_canonical(const Network& net) {
    const IsfMatrix isf = build_isf_matrix(net);
    const int n_gen = net.num_generators();
    const int n_line = net.num_branches();
    const auto load_buses = net.load_buses();
    const int n_load = static_cast<int>(load_buses.size());

    CanonicalForm canon;
    canon.num_gens = n_gen;
    canon.num_loads = n_load;
    canon.num_lines = n_line;

    canon.isf_gen.resize(n_line, n_gen);
    for (int g = 0; g < n_gen; ++g) {
        canon.isf_gen.col(g) = isf.entries.col(net.generators[g].bus);
    }
    canon.isf_load.resize(n_line, n_load);
    for (int i = 0; i < n_load; ++i) {
        canon.isf_load.col(i) = isf.entries.col(load_buses[i]);
    }

    const int m = canon.rows();
    canon.a = Eigen::MatrixXd::Zero(m, n_gen);
    canon.u = Eigen::MatrixXd::Zero(m, n_load);
    canon.b = Eigen::VectorXd::Zero(m);

    canon.a.row(CanonicalForm::kBalancePlus).setOnes();
    canon.a.row(CanonicalForm::kBalanceMinus).setConstant(-1.0);
    canon.u.row(CanonicalForm::kBalancePlus).setOnes();
    canon.u.row(CanonicalForm::kBalanceMinus).setConstant(-1.0);

    for (int l = 0; l < n_line; ++l) {
        canon.a.row(canon.flow_upper_row(l)) = canon.isf_gen.row(l);
        canon.a.row(canon.flow_lower_row(l)) = -canon.isf_gen.row(l);
        canon.u.row(canon.flow_upper_row(l)) = canon.isf_load.row(l);
        canon.u.row(canon.flow_lower_row(l)) = -canon.isf_load.row(l);
        canon.b[canon.flow_upper_row(l)] = net.branches[l].flow_max;
        canon.b[canon.flow_lower_row(l)] = -net.branches[l].flow_min;
    }
    for (int g = 0; g < n_gen; ++g) {
        canon.a(canon.gen_upper_row(g), g) = 1.0;
        canon.a(canon.gen_lower_row(g), g) = -1.0;
        canon.b[canon.gen_upper_row(g)] = net.generators[g].p_max;
        canon.b[canon.gen_lower_row(g)] = -net.generators[g].p_min;
    }
    return canon;
}

CanonicalForm build_canonical(const EnrichedNetwork& net) {
    return build_canonical(net.network);
}

std::string CanonicalForm::row_name(int row, const Network& net) const {
    if (row == kBalancePlus) return "balance+";
    if (row == kBalanceMinus) return "balance-";
    if (row < 2 + num_lines) {
        const Branch& br = net.branches[row - 2];
        return "flow+ " + std::to_string(net.buses[br.from_bus].id) + "-" +
               std::to_string(net.buses[br.to_bus].id);
    }
    if (row < 2 + 2 * num_lines) {
        const Branch& br = net.branches[row - 2 - num_lines];
        return "flow- " + std::to_string(net.buses[br.from_bus].id) + "-" +
               std::to_string(net.buses[br.to_bus].id);
    }
    if (row < 2 + 2 * num_lines + num_gens) {
        return "gen_upper " + std::to_string(row - 2 - 2 * num_lines);
    }
    return "gen_lower " + std::to_string(row - 2 - 2 * num_lines - num_gens);
}

double activity_tolerance(double rhs_value) {
    return 1e-7 * std::max(1.0, std::abs(rhs_value));
}

} // namespace carbongrid
