#pragma once

#include <string>

#include <Eigen/Dense>

#include "carbongrid/case_io.hpp"
#include "carbongrid/isf.hpp"

namespace carbongrid {

/// DCOPF constraints in multiparametric canonical form
///     a * P_gen <= u * P_load + b
/// with the fixed row stacking
///     a = [1'; -1'; Sg; -Sg; I; -I]
///     u = [1'; -1'; Sd; -Sd; 0; 0]
///     b = [0; 0; flow_max; -flow_min; p_max; -p_min]
/// where Sg/Sd restrict the ISF matrix to generator/load buses. Rows 0 and 1
/// together encode the power balance equality.
struct CanonicalForm {
    Eigen::MatrixXd a;  // (2 + 2L + 2G) x G
    Eigen::MatrixXd u;  // (2 + 2L + 2G) x D
    Eigen::VectorXd b;
    Eigen::MatrixXd isf_gen;   // L x G, flow response to generator injections
    Eigen::MatrixXd isf_load;  // L x D, flow response to load withdrawals
    int num_gens = 0;
    int num_loads = 0;
    int num_lines = 0;

    int rows() const { return 2 + 2 * num_lines + 2 * num_gens; }

    static constexpr int kBalancePlus = 0;
    static constexpr int kBalanceMinus = 1;
    int flow_upper_row(int line) const { return 2 + line; }
    int flow_lower_row(int line) const { return 2 + num_lines + line; }
    int gen_upper_row(int gen) const { return 2 + 2 * num_lines + gen; }
    int gen_lower_row(int gen) const { return 2 + 2 * num_lines + num_gens + gen; }

    /// Right-hand side u*load + b for a concrete load vector.
    Eigen::VectorXd rhs(const Eigen::VectorXd& load) const { return u * load + b; }

    /// Branch flows for a dispatch/load pair.
    Eigen::VectorXd flows(const Eigen::VectorXd& p_gen, const Eigen::VectorXd& load) const {
        return isf_gen * p_gen - isf_load * load;
    }

    std::string row_name(int row, const Network& net) const;
};

CanonicalForm build_canonical(const EnrichedNetwork& net);
CanonicalForm build_canonical(const Network& net);

/// Activity tolerance for canonical row `row`: slack <= 1e-7 * max(1, |rhs|).
double activity_tolerance(double rhs_value);

} // namespace carbongrid
