#pragma once

#include <vector>

#include <Eigen/Dense>

#include "carbongrid/dcopf.hpp"

namespace carbongrid {

/// Dispatch Jacobian J = dP_gen/dP_load together with the LMCE projection
/// e_gen' J. `at_boundary` marks degenerate optima, where J is the
/// directional derivative of the solver's terminal basis rather than a
/// two-sided gradient.
struct SensitivityResult {
    Eigen::MatrixXd jacobian;     // G x D
    Eigen::VectorXd lmce;         // t/MWh per load bus
    bool at_boundary = false;
    std::vector<int> active_set;  // canonical rows backing the Jacobian
};

/// Differentiates the optimality system restricted to the active set.
/// Linear costs: J = A_basis^-1 U_basis over an independent row basis,
/// preferring the solver's terminal basis, else the lexicographically
/// smallest nonsingular subset of the tight rows. Quadratic costs: J solves
/// the bordered system [H A_w'; A_w 0][J; M] = [0; U_w].
Eigen::MatrixXd jacobian_from_active_set(const EnrichedNetwork& net, const CostModel& cost,
                                         const DispatchSolution& sol);
Eigen::MatrixXd jacobian_from_active_set(const CanonicalForm& canon, const CostModel& cost,
                                         const DispatchSolution& sol);

/// Forward DCOPF solve followed by the restricted-KKT linear solve.
SensitivityResult lmce_exact(const EnrichedNetwork& net, const Eigen::VectorXd& load,
                             const CostModel& cost);

struct FiniteDifferenceResult {
    Eigen::VectorXd values;       // t/MWh per load bus
    std::vector<char> one_sided;  // entries that fell back to a one-sided quotient
    double step = 0.0;            // MW
    bool any_one_sided() const;
};

/// Step used when the caller does not supply one: max(0.1 MW, 1e-4 |load|_inf).
double default_fd_step(const Eigen::VectorXd& load);

/// Central-difference oracle (R_tot(d + h e_i) - R_tot(d - h e_i)) / 2h; an
/// infeasible perturbation downgrades that entry to a flagged one-sided
/// quotient.
FiniteDifferenceResult lmce_finite_difference(const EnrichedNetwork& net,
                                              const Eigen::VectorXd& load, const CostModel& cost,
                                              double step = 0.0);

struct LmpVector {
    Eigen::VectorXd values;  // $/MWh per load bus
    bool at_boundary = false;
};

/// LMP as the cost projection f' J of the identified active set (linear
/// costs only).
LmpVector lmp_exact(const EnrichedNetwork& net, const Eigen::VectorXd& load,
                    const CostModel& cost);

/// LMP assembled from the constraint multipliers instead: balance component
/// plus the congestion components mapped through the ISF columns.
Eigen::VectorXd dual_lmp(const EnrichedNetwork& net, const DispatchSolution& sol);

} // namespace carbongrid
