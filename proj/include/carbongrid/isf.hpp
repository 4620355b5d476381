#pragma once

#include <Eigen/Dense>

#include "carbongrid/network.hpp"

namespace carbongrid {

/// Injection shift factor matrix: entries(l, b) is the MW flow change on
/// branch l per MW injected at bus b and withdrawn at the slack bus. The
/// slack column is identically zero.
struct IsfMatrix {
    Eigen::MatrixXd entries;  // L x N
    int slack_bus = 0;        // internal bus index

    /// Branch flows for a full nodal injection vector (length N).
    Eigen::VectorXd flows(const Eigen::VectorXd& injections) const {
        return entries * injections;
    }
};

/// Builds the ISF (PTDF) matrix: assemble the bus susceptance matrix from
/// branch susceptances 1/x, delete the slack row/column, factorize once and
/// back-solve one right-hand side per branch.
IsfMatrix build_isf_matrix(const Network& net);

} // namespace carbongrid
