#pragma once

#include <vector>

#include <Eigen/Dense>

#include "carbongrid/canonical.hpp"
#include "carbongrid/simplex.hpp"

namespace carbongrid::detail {

struct QpResult {
    LpStatus status = LpStatus::Optimal;
    Eigen::VectorXd x;
    double balance_dual = 0.0;            // multiplier on the balance equality
    Eigen::VectorXd row_multipliers;      // per canonical row, >= 0, zero off the working set
    std::vector<int> working_set;         // canonical rows, balance+ included, sorted
    int iterations = 0;
};

/// Primal active-set method for  min 1/2 x'Hx + f'x  over the canonical
/// constraint rows evaluated at `rhs`, started from a feasible vertex `x0`
/// with independent active rows `w0`. H is diagonal positive semidefinite;
/// directions of zero curvature fall back to LP-style ratio steps.
QpResult solve_qp_active_set(const CanonicalForm& canon, const Eigen::VectorXd& rhs,
                             const Eigen::VectorXd& hessian_diag, const Eigen::VectorXd& linear,
                             const Eigen::VectorXd& x0, const std::vector<int>& w0);

} // namespace carbongrid::detail
